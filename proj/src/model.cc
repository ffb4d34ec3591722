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

#include "evigraph/model.h"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "evigraph/errors.h"
#include "evigraph/gat.h"
#include "evigraph/gcn.h"
#include "evigraph/graph_distance.h"
#include "evigraph/optimizer.h"

namespace evigraph {
namespace {

std::string gcn_name(const char* side, std::size_t j) {
  return std::string("gcn.") + side + ".W" + std::to_string(j);
}

std::string hex_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ValidationError(where, "bad number '" + s + "'");
  return v;
}

}  // namespace

ClaimVerifier::ClaimVerifier(const Config& config) : config_(config) {
  config_.validate_shapes();
  const std::size_t de = config_.encoder_dim;
  const std::size_t d = config_.node_dim;
  add_encoder_params(params_, config_);
  params_.add("cls.W", Tensor::matrix(de, kNumLabels));
  params_.add("cls.b", Tensor::matrix(1, kNumLabels));
  params_.add("node.projection", Tensor::matrix(de, d));
  for (std::size_t j = 0; j < config_.gcn_layers; ++j) {
    params_.add(gcn_name("claim", j), Tensor::matrix(d, d));
    if (!config_.tied_gcn) params_.add(gcn_name("evidence", j), Tensor::matrix(d, d));
  }
  params_.add("gat.Wc", Tensor::matrix(config_.attention_dim, d));
  params_.add("gat.We", Tensor::matrix(config_.attention_dim, d));
  params_.add("align.Wa", Tensor::matrix(d, 4 * d));
  params_.add("head.W1", Tensor::matrix(d + de, 2 * d));
  params_.add("head.b1", Tensor::matrix(1, 2 * d));
  params_.add("head.W2", Tensor::matrix(2 * d, kNumLabels));
  params_.add("head.b2", Tensor::matrix(1, kNumLabels));
}

void ClaimVerifier::initialize(Rng& rng) { init_uniform(params_, rng, config_.init_scale); }

PreparedInput ClaimVerifier::prepare(const EvidenceSet& input) const {
  PreparedInput p;
  const bool need_graphs = config_.use_graph;
  if (need_graphs || config_.reorder) {
    p.evidence_graph = build_graph(input, GraphOrigin::kEvidence);
  }
  if (config_.reorder) {
    p.evidence_order = sort_evidence(input, *p.evidence_graph).sentences;
  } else {
    p.evidence_order = document_order(input);
  }
  p.layout = layout_sequence(input, p.evidence_order, config_.vocab_size, config_.max_seq_len);
  if (p.layout.truncated()) {
    p.warnings.push_back(std::to_string(p.layout.truncated_tokens) +
                         " evidence tokens truncated at max_seq_len");
  }
  if (need_graphs) {
    p.claim_graph = with_fallback_node(build_graph(input, GraphOrigin::kClaim), input);
    p.evidence_graph = with_fallback_node(std::move(*p.evidence_graph), input);
    p.claim_groups = node_token_groups(*p.claim_graph, p.layout, &p.warnings);
    p.evidence_groups = node_token_groups(*p.evidence_graph, p.layout, &p.warnings);
    p.claim_adjacency = normalize_adjacency(*p.claim_graph);
    p.evidence_adjacency = normalize_adjacency(*p.evidence_graph);
  } else {
    p.evidence_graph.reset();
  }
  return p;
}

EncodedSequence ClaimVerifier::encode(Tape& tape, const PreparedInput& input) {
  return evigraph::encode(tape, params_, config_, input.layout.ids, input.layout.segments);
}

Var ClaimVerifier::cls_logits(Tape& tape, Var cls) {
  return ops::linear(cls, tape.param(params_.get("cls.W")), tape.param(params_.get("cls.b")));
}

std::vector<Var> ClaimVerifier::gcn_weights(Tape& tape, bool claim_side) {
  std::vector<Var> out;
  const char* side = (claim_side || config_.tied_gcn) ? "claim" : "evidence";
  for (std::size_t j = 0; j < config_.gcn_layers; ++j) {
    out.push_back(tape.param(params_.get(gcn_name(side, j))));
  }
  return out;
}

Var ClaimVerifier::graph_logits(Tape& tape, const PreparedInput& input, Var states, Var cls) {
  if (!input.claim_graph || !input.evidence_graph) {
    throw Error("graph_logits: input was prepared without graphs");
  }
  Var projection = tape.param(params_.get("node.projection"));
  Var hc0 = init_node_matrix(states, input.claim_groups, projection);
  Var he0 = init_node_matrix(states, input.evidence_groups, projection);
  const std::vector<Var> wc = gcn_weights(tape, true);
  const std::vector<Var> we = gcn_weights(tape, false);
  Var hc = gcn_forward(hc0, tape.constant(input.claim_adjacency), wc);
  Var he = gcn_forward(he0, tape.constant(input.evidence_adjacency), we);

  Var scores = attention_scores(hc, he, tape.param(params_.get("gat.Wc")),
                                tape.param(params_.get("gat.We")));
  Var centric = claim_centric(normalize_attention(scores), he);
  Var aligned = align(hc, centric, tape.param(params_.get("align.Wa")));
  HeadParams head{tape.param(params_.get("head.W1")), tape.param(params_.get("head.b1")),
                  tape.param(params_.get("head.W2")), tape.param(params_.get("head.b2"))};
  return classify(aligned, cls, head);
}

Var ClaimVerifier::logits(Tape& tape, const PreparedInput& input) {
  EncodedSequence enc = encode(tape, input);
  if (config_.use_graph) return graph_logits(tape, input, enc.states, enc.cls);
  return cls_logits(tape, enc.cls);
}

std::array<double, kNumLabels> ClaimVerifier::probabilities(const PreparedInput& input) {
  Tape tape;
  const Tensor p = softmax(logits(tape, input).value(), 1);
  std::array<double, kNumLabels> out{};
  for (std::size_t i = 0; i < kNumLabels; ++i) out[i] = p[i];
  return out;
}

bool ClaimVerifier::is_encoder_param(const std::string& name) {
  return name.starts_with("encoder.") || name.starts_with("cls.");
}

void ClaimVerifier::set_encoder_trainable(bool on) {
  for (Parameter* p : params_.all()) {
    if (is_encoder_param(p->name())) p->trainable = on;
  }
}

void ClaimVerifier::set_graph_trainable(bool on) {
  for (Parameter* p : params_.all()) {
    if (!is_encoder_param(p->name())) p->trainable = on;
  }
}

Label argmax_label(const std::array<double, kNumLabels>& probabilities) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kNumLabels; ++i) {
    if (probabilities[i] > probabilities[best]) best = i;
  }
  return kAllLabels[best];
}

Json TrainingLog::to_json() const {
  Json epochs_json = Json::array();
  for (const EpochRecord& e : epochs) {
    epochs_json.push_back({{"stage", e.stage},
                           {"epoch", e.epoch},
                           {"loss", hex_double(e.loss)},
                           {"accuracy", hex_double(e.accuracy)}});
  }
  return {{"epochs", std::move(epochs_json)},
          {"skipped", skipped},
          {"warnings", warnings},
          {"seed", seed}};
}

TrainingLog TrainingLog::from_json(const Json& j) {
  TrainingLog log;
  for (const Json& e : j.at("epochs")) {
    log.epochs.push_back({e.at("stage").get<std::size_t>(), e.at("epoch").get<std::size_t>(),
                          parse_hex_double(e.at("loss").get<std::string>(), "log.loss"),
                          parse_hex_double(e.at("accuracy").get<std::string>(), "log.accuracy")});
  }
  log.skipped = j.at("skipped").get<std::size_t>();
  log.warnings = j.at("warnings").get<std::size_t>();
  log.seed = j.at("seed").get<std::uint64_t>();
  return log;
}

Json checkpoint_to_json(const ClaimVerifier& model, const TrainingLog& log) {
  Json params = Json::object();
  for (const Parameter* p : model.params().all()) {
    Json values = Json::array();
    for (double v : p->value().data()) values.push_back(hex_double(v));
    params[p->name()] = {{"shape", p->value().shape()}, {"values", std::move(values)}};
  }
  return {{"version", kCheckpointVersion},
          {"config", model.config().to_json()},
          {"seed", log.seed},
          {"log", log.to_json()},
          {"params", std::move(params)}};
}

std::string serialize_checkpoint(const ClaimVerifier& model, const TrainingLog& log) {
  return checkpoint_to_json(model, log).dump() + "\n";
}

LoadedCheckpoint checkpoint_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("version")) throw ValidationError("version", "missing field");
  if (j.at("version") != kCheckpointVersion) {
    throw ValidationError("version", "incompatible checkpoint version");
  }
  LoadedCheckpoint out{ClaimVerifier(config_from_json(j.at("config"))),
                       TrainingLog::from_json(j.at("log"))};
  const Json& params = j.at("params");
  for (Parameter* p : out.model.params().all()) {
    auto it = params.find(p->name());
    if (it == params.end()) throw ValidationError("params." + p->name(), "missing parameter");
    const auto shape = it->at("shape").get<std::vector<std::size_t>>();
    if (shape != p->value().shape()) {
      throw ValidationError("params." + p->name(), "shape does not match config");
    }
    const Json& values = it->at("values");
    if (values.size() != p->value().size()) {
      throw ValidationError("params." + p->name(), "wrong number of values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      p->value()[i] = parse_hex_double(values[i].get<std::string>(), "params." + p->name());
    }
  }
  if (params.size() != out.model.params().size()) {
    throw ValidationError("params", "checkpoint has parameters the config does not define");
  }
  return out;
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  return checkpoint_from_json(parse_json(read_text_file(path)));
}

}  // namespace evigraph
