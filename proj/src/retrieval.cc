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

#include "evigraph/retrieval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace evigraph {

std::vector<ScoredDocument> retrieve_documents(std::string_view claim,
                                               std::span<const Document> corpus, std::size_t m,
                                               std::vector<std::string>* warnings) {
  const std::vector<std::string> claim_words = tokenize_words(claim);
  const std::set<std::string> claim_set(claim_words.begin(), claim_words.end());

  std::vector<ScoredDocument> scored;
  scored.reserve(corpus.size());
  bool any_overlap = false;
  for (const Document& d : corpus) {
    const std::vector<std::string> title = tokenize_words(d.title);
    const std::set<std::string> title_set(title.begin(), title.end());
    double score = 0.0;
    for (const std::string& w : title_set) score += claim_set.count(w);
    if (score > 0.0) any_overlap = true;
    if (!title.empty() && std::search(claim_words.begin(), claim_words.end(), title.begin(),
                                      title.end()) != claim_words.end()) {
      score += 0.5;
    }
    scored.push_back({d.doc_id, score});
  }
  if (!any_overlap && !corpus.empty() && warnings != nullptr) {
    warnings->push_back("no document title shares a word with the claim");
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredDocument& a, const ScoredDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (scored.size() > m) scored.resize(m);
  return scored;
}

double LexicalScorer::score(std::string_view claim, std::string_view sentence) const {
  const std::vector<std::string> a = tokenize_words(claim);
  const std::vector<std::string> b = tokenize_words(sentence);
  if (a.empty() || b.empty()) return 0.0;
  std::unordered_map<std::string, std::size_t> counts;
  for (const std::string& w : a) ++counts[w];
  std::size_t overlap = 0;
  for (const std::string& w : b) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return static_cast<double>(overlap) /
         std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double score_evidence(std::string_view claim, std::string_view sentence) {
  return LexicalScorer().score(claim, sentence);
}

std::vector<ScoredSentence> rank_sentences(std::string_view claim,
                                           std::span<const Document* const> documents,
                                           const EvidenceScorer& scorer) {
  std::vector<ScoredSentence> out;
  for (const Document* d : documents) {
    for (std::size_t i = 0; i < d->sentences.size(); ++i) {
      out.push_back({d->doc_id, i, scorer.score(claim, d->sentences[i])});
    }
  }
  std::sort(out.begin(), out.end(), [](const ScoredSentence& a, const ScoredSentence& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    return a.sentence_index < b.sentence_index;
  });
  return out;
}

std::vector<ScoredSentence> select_evidence(std::string_view claim,
                                            std::span<const Document* const> documents,
                                            std::size_t k_ev, const EvidenceScorer& scorer) {
  std::vector<ScoredSentence> ranked = rank_sentences(claim, documents, scorer);
  if (ranked.size() > k_ev) ranked.resize(k_ev);
  return ranked;
}

std::vector<const Document*> resolve_documents(std::span<const Document> corpus,
                                               std::span<const ScoredDocument> ids) {
  std::map<std::string_view, const Document*> by_id;
  for (const Document& d : corpus) by_id.emplace(d.doc_id, &d);
  std::vector<const Document*> out;
  for (const ScoredDocument& s : ids) {
    auto it = by_id.find(s.doc_id);
    if (it != by_id.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace evigraph
