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

#ifndef EVIGRAPH_MODEL_H_
#define EVIGRAPH_MODEL_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evigraph/autodiff.h"
#include "evigraph/config.h"
#include "evigraph/data_model.h"
#include "evigraph/encoder.h"
#include "evigraph/graph.h"
#include "evigraph/json_io.h"
#include "evigraph/random.h"

namespace evigraph {

// Everything about one claim/evidence pair that does not depend on
// parameters: graphs, evidence order, encoder layout and node groupings.
struct PreparedInput {
  std::optional<Graph> claim_graph;
  std::optional<Graph> evidence_graph;
  std::vector<std::string> evidence_order;
  SequenceLayout layout;
  std::vector<std::vector<std::size_t>> claim_groups;
  std::vector<std::vector<std::size_t>> evidence_groups;
  Tensor claim_adjacency;
  Tensor evidence_adjacency;
  std::vector<std::string> warnings;
};

// Sequence encoder with a linear [CLS] classifier, plus the graph reasoning
// stack: node projection, GCN over each graph, claim-to-evidence attention,
// alignment and the MLP head.
//
// Parameter names:
//   encoder.embedding, encoder.layer<l>.{Wq,Wk,Wv,Wo,rel_bias}
//   cls.W, cls.b
//   node.projection
//   gcn.claim.W<j>, gcn.evidence.W<j> (the latter only when untied)
//   gat.Wc, gat.We, align.Wa
//   head.W1, head.b1, head.W2, head.b2
class ClaimVerifier {
 public:
  explicit ClaimVerifier(const Config& config);

  const Config& config() const { return config_; }
  ParameterStore& params() { return params_; }
  const ParameterStore& params() const { return params_; }

  // uniform(-init_scale, init_scale) over every parameter.
  void initialize(Rng& rng);

  // Builds graphs only when the configuration needs them: the evidence
  // graph for reordering or graph reasoning, the claim graph for the latter.
  PreparedInput prepare(const EvidenceSet& input) const;

  EncodedSequence encode(Tape& tape, const PreparedInput& input);
  Var cls_logits(Tape& tape, Var cls);
  Var graph_logits(Tape& tape, const PreparedInput& input, Var states, Var cls);
  // Head selected by config().use_graph.
  Var logits(Tape& tape, const PreparedInput& input);
  std::array<double, kNumLabels> probabilities(const PreparedInput& input);

  // Trainability toggles for the two training stages.
  void set_encoder_trainable(bool on);
  void set_graph_trainable(bool on);
  static bool is_encoder_param(const std::string& name);

 private:
  std::vector<Var> gcn_weights(Tape& tape, bool claim_side);

  Config config_;
  ParameterStore params_;
};

// Index of the largest probability; ties go to the lower index, so equal
// probabilities predict SUPPORTED.
Label argmax_label(const std::array<double, kNumLabels>& probabilities);

struct EpochRecord {
  std::size_t stage = 1;
  std::size_t epoch = 0;
  double loss = 0.0;
  double accuracy = 0.0;
};

struct TrainingLog {
  std::vector<EpochRecord> epochs;
  std::size_t skipped = 0;
  std::size_t warnings = 0;
  std::uint64_t seed = 0;

  Json to_json() const;
  static TrainingLog from_json(const Json& j);
};

// {version, config, seed, log, params: {name: {shape, values}}} with values
// as hex-float strings so a reload is bit-exact.
inline constexpr int kCheckpointVersion = 1;
Json checkpoint_to_json(const ClaimVerifier& model, const TrainingLog& log);
std::string serialize_checkpoint(const ClaimVerifier& model, const TrainingLog& log);

struct LoadedCheckpoint {
  ClaimVerifier model;
  TrainingLog log;
};
LoadedCheckpoint checkpoint_from_json(const Json& j);
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace evigraph

#endif  // EVIGRAPH_MODEL_H_
