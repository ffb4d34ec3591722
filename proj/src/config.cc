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

#include "evigraph/config.h"

#include <charconv>
#include <functional>
#include <sstream>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ValidationError(std::string(key), "expected a non-negative integer, got '" +
                                                std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const std::string s(v);
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ValidationError(std::string(key), "expected a number, got '" + std::string(v) + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError(std::string(key), "expected true/false, got '" + std::string(v) + "'");
}

struct FieldRef {
  enum class Kind { kSize, kDouble, kBool, kSeed } kind;
  std::function<void*(Config&)> get;
};

template <class T>
FieldRef ref(FieldRef::Kind kind, T Config::*member) {
  return {kind, [member](Config& c) -> void* { return &(c.*member); }};
}

const std::map<std::string, FieldRef, std::less<>>& fields() {
  using K = FieldRef::Kind;
  static const std::map<std::string, FieldRef, std::less<>> table = {
      {"node_dim", ref(K::kSize, &Config::node_dim)},
      {"gcn_layers", ref(K::kSize, &Config::gcn_layers)},
      {"attention_dim", ref(K::kSize, &Config::attention_dim)},
      {"tied_gcn", ref(K::kBool, &Config::tied_gcn)},
      {"encoder_dim", ref(K::kSize, &Config::encoder_dim)},
      {"encoder_layers", ref(K::kSize, &Config::encoder_layers)},
      {"relative_window", ref(K::kSize, &Config::relative_window)},
      {"relative_bias", ref(K::kBool, &Config::relative_bias)},
      {"max_seq_len", ref(K::kSize, &Config::max_seq_len)},
      {"vocab_size", ref(K::kSize, &Config::vocab_size)},
      {"learning_rate", ref(K::kDouble, &Config::learning_rate)},
      {"weight_decay", ref(K::kDouble, &Config::weight_decay)},
      {"init_scale", ref(K::kDouble, &Config::init_scale)},
      {"batch_size", ref(K::kSize, &Config::batch_size)},
      {"stage1_epochs", ref(K::kSize, &Config::stage1_epochs)},
      {"stage2_epochs", ref(K::kSize, &Config::stage2_epochs)},
      {"seed", ref(K::kSeed, &Config::seed)},
      {"top_docs", ref(K::kSize, &Config::top_docs)},
      {"top_sentences", ref(K::kSize, &Config::top_sentences)},
      {"reorder", ref(K::kBool, &Config::reorder)},
      {"use_graph", ref(K::kBool, &Config::use_graph)},
      {"ablation_mode", ref(K::kBool, &Config::ablation_mode)},
  };
  return table;
}

}  // namespace

void Config::validate_shapes() const {
  auto positive = [](const char* name, std::size_t v) {
    if (v < 1) throw ValidationError(name, "must be >= 1");
  };
  positive("node_dim", node_dim);
  positive("attention_dim", attention_dim);
  positive("encoder_dim", encoder_dim);
  positive("encoder_layers", encoder_layers);
  positive("vocab_size", vocab_size);
  positive("batch_size", batch_size);
  positive("top_docs", top_docs);
  positive("top_sentences", top_sentences);
  if (gcn_layers < 1 && !ablation_mode) {
    throw ValidationError("gcn_layers", "must be >= 1 (0 is allowed only with ablation_mode)");
  }
  if (max_seq_len < 2) throw ValidationError("max_seq_len", "must be >= 2");
  if (vocab_size < 3) throw ValidationError("vocab_size", "must be >= 3");
  if (weight_decay < 0.0) throw ValidationError("weight_decay", "must be >= 0");
  if (init_scale < 0.0) throw ValidationError("init_scale", "must be >= 0");
}

void Config::validate() const {
  validate_shapes();
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate", "must be > 0");
}

Json Config::to_json() const {
  return {{"node_dim", node_dim},
          {"gcn_layers", gcn_layers},
          {"attention_dim", attention_dim},
          {"tied_gcn", tied_gcn},
          {"encoder_dim", encoder_dim},
          {"encoder_layers", encoder_layers},
          {"relative_window", relative_window},
          {"relative_bias", relative_bias},
          {"max_seq_len", max_seq_len},
          {"vocab_size", vocab_size},
          {"learning_rate", learning_rate},
          {"weight_decay", weight_decay},
          {"init_scale", init_scale},
          {"batch_size", batch_size},
          {"stage1_epochs", stage1_epochs},
          {"stage2_epochs", stage2_epochs},
          {"seed", seed},
          {"top_docs", top_docs},
          {"top_sentences", top_sentences},
          {"reorder", reorder},
          {"use_graph", use_graph},
          {"ablation_mode", ablation_mode}};
}

Config desk_preset() {
  Config c;
  c.node_dim = 32;
  c.attention_dim = 32;
  c.encoder_dim = 32;
  c.encoder_layers = 2;
  c.vocab_size = 2048;
  c.learning_rate = 1e-3;
  c.batch_size = 8;
  return c;
}

void set_config_value(Config& config, std::string_view key, std::string_view value) {
  const auto& table = fields();
  auto it = table.find(key);
  if (it == table.end()) throw ValidationError(std::string(key), "unknown config key");
  void* p = it->second.get(config);
  switch (it->second.kind) {
    case FieldRef::Kind::kSize:
      *static_cast<std::size_t*>(p) = parse_size(key, value);
      break;
    case FieldRef::Kind::kDouble:
      *static_cast<double*>(p) = parse_double(key, value);
      break;
    case FieldRef::Kind::kBool:
      *static_cast<bool*>(p) = parse_bool(key, value);
      break;
    case FieldRef::Kind::kSeed:
      *static_cast<std::uint64_t*>(p) = parse_size(key, value);
      break;
  }
}

void apply_config_json(Config& config, const Json& j) {
  if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (v.is_string()) {
      set_config_value(config, key, v.get<std::string>());
    } else if (v.is_boolean()) {
      set_config_value(config, key, v.get<bool>() ? "true" : "false");
    } else if (v.is_number_float()) {
      std::ostringstream ss;
      ss.precision(17);
      ss << v.get<double>();
      set_config_value(config, key, ss.str());
    } else if (v.is_number()) {
      set_config_value(config, key, v.dump());
    } else {
      throw ValidationError(key, "unsupported value type");
    }
  }
}

void apply_config_text(Config& config, std::string_view text) {
  const std::string trimmed = trim(text);
  if (!trimmed.empty() && trimmed.front() == '{') {
    apply_config_json(config, parse_json(trimmed));
    return;
  }
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string line = trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no), "expected key=value");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_config_file(Config& config, const std::filesystem::path& path) {
  apply_config_text(config, read_text_file(path));
}

Config config_from_json(const Json& j) {
  Config c;
  apply_config_json(c, j);
  return c;
}

}  // namespace evigraph
