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


#ifndef EVIGRAPH_RELEVANCE_H_
#define EVIGRAPH_RELEVANCE_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "evigraph/autodiff.h"
#include "evigraph/config.h"
#include "evigraph/data_model.h"
#include "evigraph/random.h"
#include "evigraph/retrieval.h"

namespace evigraph {

// Sentence relevance from the sequence encoder and a two-way linear head
// over the [CLS] state. score() is the probability of the relevant class.
class TrainedScorer final : public EvidenceScorer {
 public:
  explicit TrainedScorer(const Config& config);

  void initialize(Rng& rng);
  double score(std::string_view claim, std::string_view sentence) const override;

  // 1 x 2 logits, index 1 = relevant. Requires both texts to tokenize to
  // at least one word.
  Var logits(Tape& tape, std::string_view claim, std::string_view sentence) const;

  const Config& config() const { return config_; }
  ParameterStore& params() { return params_; }

 private:
  Config config_;
  // The tape binds parameters by mutable reference; scoring never writes.
  mutable ParameterStore params_;
};

struct ScorerTrainingOptions {
  std::size_t epochs = 5;
  std::size_t negatives = 4;  // random non-gold sentences per gold sentence
};

struct ScorerTrainingLog {
  std::vector<double> epoch_loss;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  // Gold keys that name a sentence absent from the corpus.
  std::size_t missing = 0;
};

TrainedScorer train_scorer(std::span<const Instance> dataset, std::span<const Document> corpus,
                           const Config& config, const ScorerTrainingOptions& options,
                           ScorerTrainingLog* log = nullptr);

}  // namespace evigraph

#endif  // EVIGRAPH_RELEVANCE_H_
