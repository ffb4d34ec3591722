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

#ifndef EVIGRAPH_CONFIG_H_
#define EVIGRAPH_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "evigraph/json_io.h"

namespace evigraph {

// Model, training and pipeline settings. Defaults are the full-scale values;
// desk_preset() shrinks the model for single-core runs on synthetic data.
struct Config {
  // graph reasoning
  std::size_t node_dim = 100;
  std::size_t gcn_layers = 2;
  std::size_t attention_dim = 100;
  bool tied_gcn = true;
  // sequence encoder
  std::size_t encoder_dim = 64;
  std::size_t encoder_layers = 2;
  std::size_t relative_window = 16;
  bool relative_bias = true;
  std::size_t max_seq_len = 256;
  std::size_t vocab_size = 4096;
  // training
  double learning_rate = 2e-6;
  double weight_decay = 0.01;
  double init_scale = 0.08;
  std::size_t batch_size = 6;
  std::size_t stage1_epochs = 30;
  std::size_t stage2_epochs = 60;
  std::uint64_t seed = 0;
  // pipeline
  std::size_t top_docs = 10;
  std::size_t top_sentences = 5;
  // ablations
  bool reorder = true;
  bool use_graph = true;
  // permits gcn_layers == 0
  bool ablation_mode = false;

  // Throws ValidationError naming the field.
  void validate() const;
  // Everything except the learning-rate sign; used by train() so that a zero
  // rate can still be exercised programmatically.
  void validate_shapes() const;

  Json to_json() const;
  friend bool operator==(const Config&, const Config&) = default;
};

// Smaller dimensions with lr 1e-3 and batch 8.
Config desk_preset();

// Sets one field from its textual value; throws ValidationError for an
// unknown key or a malformed value.
void set_config_value(Config& config, std::string_view key, std::string_view value);

// Applies every key of a JSON object, or of flat "key = value" text (blank
// lines and lines starting with '#' are skipped).
void apply_config_json(Config& config, const Json& j);
void apply_config_text(Config& config, std::string_view text);
void apply_config_file(Config& config, const std::filesystem::path& path);

Config config_from_json(const Json& j);

}  // namespace evigraph

#endif  // EVIGRAPH_CONFIG_H_
