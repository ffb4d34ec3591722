// Copyright 2026 The EviGraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVIGRAPH_RETRIEVAL_H_
#define EVIGRAPH_RETRIEVAL_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evigraph/data_model.h"

namespace evigraph {

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;
};

// Keyword matching on titles: score = |distinct claim words ∩ distinct title
// words|, plus 0.5 when the whole title occurs as a contiguous word run in
// the claim. Returns the top m by score, ties by doc_id. When no title
// shares a word with the claim a warning is appended and the m lowest ids
// come back with score 0.
std::vector<ScoredDocument> retrieve_documents(std::string_view claim,
                                               std::span<const Document> corpus, std::size_t m,
                                               std::vector<std::string>* warnings = nullptr);

class EvidenceScorer {
 public:
  virtual ~EvidenceScorer() = default;
  // Relevance of sentence to claim; larger is better, always finite.
  virtual double score(std::string_view claim, std::string_view sentence) const = 0;
};

// |multiset word overlap| / sqrt(|claim words| * |sentence words|); 0 when
// either side has no words.
class LexicalScorer final : public EvidenceScorer {
 public:
  double score(std::string_view claim, std::string_view sentence) const override;
};

double score_evidence(std::string_view claim, std::string_view sentence);

struct ScoredSentence {
  std::string doc_id;
  std::size_t sentence_index = 0;
  double score = 0.0;

  friend bool operator==(const ScoredSentence&, const ScoredSentence&) = default;
};

// Every sentence of the given documents, descending by score with ties by
// (doc_id, sentence_index).
std::vector<ScoredSentence> rank_sentences(std::string_view claim,
                                           std::span<const Document* const> documents,
                                           const EvidenceScorer& scorer);

// First k_ev entries of rank_sentences.
std::vector<ScoredSentence> select_evidence(std::string_view claim,
                                            std::span<const Document* const> documents,
                                            std::size_t k_ev, const EvidenceScorer& scorer);

// Looks documents up by id; unknown ids are skipped.
std::vector<const Document*> resolve_documents(std::span<const Document> corpus,
                                               std::span<const ScoredDocument> ids);

}  // namespace evigraph

#endif  // EVIGRAPH_RETRIEVAL_H_
