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

#ifndef EVIGRAPH_EVALUATION_H_
#define EVIGRAPH_EVALUATION_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "evigraph/data_model.h"
#include "evigraph/json_io.h"

namespace evigraph {

// True iff some gold group is a subset of the predicted set. An empty list
// of groups is never satisfied.
bool evidence_correct(std::span<const EvidenceGroup> gold_groups,
                      std::span<const EvidenceKey> predicted);

// Correct label, and either NEI or evidence_correct.
bool instance_correct(Label gold, Label predicted, std::span<const EvidenceGroup> gold_groups,
                      std::span<const EvidenceKey> predicted_evidence);

struct EvalReport {
  std::size_t instances = 0;
  double label_accuracy = 0.0;
  double fever_score = 0.0;
  double evidence_precision = 0.0;
  double evidence_recall = 0.0;
  double evidence_f1 = 0.0;
  // confusion[gold][predicted], indexed by label_index.
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};
  std::size_t label_correct = 0;
  std::size_t fever_correct = 0;
  // Micro-averaged evidence counts over non-NEI gold instances.
  std::size_t evidence_hits = 0;
  std::size_t evidence_predicted = 0;
  std::size_t evidence_gold = 0;
  // Non-NEI gold instances without any gold group.
  std::size_t unannotated = 0;

  Json to_json() const;
  std::string table() const;
};

// Matches predictions to gold by instance_id. Only the first k_ev predicted
// sentences of each prediction are scored, as in the shared task. Throws
// ValidationError for duplicate prediction ids or for ids present on one
// side only (all offending ids are listed).
EvalReport evaluate(std::span<const Prediction> predictions, std::span<const Instance> gold,
                    std::size_t k_ev);

}  // namespace evigraph

#endif  // EVIGRAPH_EVALUATION_H_
