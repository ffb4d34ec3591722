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

#ifndef EVIGRAPH_TRAINING_H_
#define EVIGRAPH_TRAINING_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "evigraph/config.h"
#include "evigraph/data_model.h"
#include "evigraph/json_io.h"
#include "evigraph/model.h"

namespace evigraph {

using SrlIndex = std::map<std::string, EvidenceSet>;
SrlIndex index_srl(std::vector<SrlRecord> records);

// Claim-only evidence set for instances without SRL parses: the claim is
// tokenized and carries no tuples.
EvidenceSet claim_only_evidence(const Instance& instance);

struct TrainResult {
  ClaimVerifier model;
  TrainingLog log;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Two-stage training with AdamW and mean cross-entropy per batch.
//   stage 1: encoder + [CLS] classifier, stage1_epochs
//   stage 2: encoder frozen, graph modules + head, stage2_epochs (only when
//            use_graph is set)
// Instances without an SRL record are skipped and counted in the log.
// Deterministic given config.seed.
TrainResult train(std::span<const Instance> dataset, const SrlIndex& srl, const Config& config,
                  const EpochCallback& on_epoch = {});

// Runs the model on one instance. used evidence = the evidence sentences of
// the set, in stored order, that carry a source index (at most top_sentences).
Prediction predict(const Instance& instance, const EvidenceSet& evidence, ClaimVerifier& model);

// Predicts every instance, falling back to claim_only_evidence when no SRL
// record exists. Work is split over `jobs` threads; the result is ordered by
// instance_id whatever the thread count.
std::vector<Prediction> predict_all(std::span<const Instance> dataset, const SrlIndex& srl,
                                    ClaimVerifier& model, std::size_t jobs = 1);

// Fraction of instances whose predicted label matches.
double label_accuracy(std::span<const Prediction> predictions, std::span<const Instance> gold);

}  // namespace evigraph

#endif  // EVIGRAPH_TRAINING_H_
