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

#include "evigraph/encoder.h"

#include <cmath>
#include <cstdint>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

std::string layer_name(std::size_t l, const char* what) {
  return "encoder.layer" + std::to_string(l) + "." + what;
}

}  // namespace

std::size_t token_id(std::string_view word, std::size_t vocab_size) {
  std::vector<std::string> norm = tokenize_words(word);
  const std::string key = norm.size() == 1 ? norm.front() : std::string(word);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return 2 + static_cast<std::size_t>(h % (vocab_size - 2));
}

SequenceLayout layout_sequence(const EvidenceSet& es, const std::vector<std::string>& evidence_order,
                               std::size_t vocab_size, std::size_t max_seq_len) {
  SequenceLayout out;
  const std::size_t claim_len = es.claim.tokens.size();
  if (claim_len + 2 > max_seq_len) {
    throw DimensionError("max_seq_len " + std::to_string(max_seq_len) +
                         " cannot hold a claim of " + std::to_string(claim_len) + " tokens");
  }
  auto push = [&](std::size_t id, std::string word, std::size_t segment) {
    out.ids.push_back(id);
    out.segments.push_back(segment);
    out.words.push_back(std::move(word));
    return out.ids.size() - 1;
  };

  auto& claim_pos = out.positions[es.claim.sentence_id];
  for (const Token& t : es.claim.tokens) claim_pos.push_back(push(token_id(t.text, vocab_size), t.text, kClaimSegment));
  push(kSepId, "[SEP]", kMarkerSegment);

  // One slot is kept for [CLS].
  std::size_t budget = max_seq_len - out.ids.size() - 1;
  for (const std::string& sid : evidence_order) {
    const Sentence* s = es.find_evidence(sid);
    if (s == nullptr) throw Error("layout_sequence: unknown evidence sentence '" + sid + "'");
    auto& pos = out.positions[sid];
    pos.assign(s->tokens.size(), std::nullopt);
    out.evidence_order.push_back(sid);
    if (budget < 2) {
      out.truncated_tokens += s->tokens.size();
      continue;
    }
    const std::size_t keep = std::min(s->tokens.size(), budget - 1);
    for (std::size_t i = 0; i < keep; ++i) {
      pos[i] = push(token_id(s->tokens[i].text, vocab_size), s->tokens[i].text, kEvidenceSegment);
    }
    push(kSepId, "[SEP]", kMarkerSegment);
    out.truncated_tokens += s->tokens.size() - keep;
    budget -= keep + 1;
  }
  push(kClsId, "[CLS]", kMarkerSegment);
  return out;
}

void add_encoder_params(ParameterStore& params, const Config& config) {
  const std::size_t d = config.encoder_dim;
  params.add("encoder.embedding", Tensor::matrix(config.vocab_size, d));
  params.add("encoder.segment", Tensor::matrix(kNumSegments, d));
  for (std::size_t l = 0; l < config.encoder_layers; ++l) {
    for (const char* w : {"Wq", "Wk", "Wv", "Wo"}) params.add(layer_name(l, w), Tensor::matrix(d, d));
    params.add(layer_name(l, "rel_bias"), Tensor::matrix(1, 2 * config.relative_window + 1));
  }
}

Var encoder_layer(Var x, Var wq, Var wk, Var wv, Var wo, Var rel_bias, std::size_t window) {
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(x.cols()));
  Var q = ops::matmul(x, wq);
  Var k = ops::matmul(x, wk);
  Var v = ops::matmul(x, wv);
  Var scores = ops::scale(ops::matmul_nt(q, k), inv_sqrt_d);
  if (rel_bias.valid()) scores = ops::add_relative_bias(scores, rel_bias, window);
  Var attn = ops::softmax_rows(scores);
  Var mixed = ops::matmul(ops::matmul(attn, v), wo);
  return ops::add(x, ops::relu(mixed));
}

EncodedSequence encode(Tape& tape, ParameterStore& params, const Config& config,
                       const std::vector<std::size_t>& ids,
                       const std::vector<std::size_t>& segments) {
  if (ids.empty()) throw DimensionError("encode: empty sequence");
  Var x = ops::embedding(tape, params.get("encoder.embedding"), ids);
  if (!segments.empty()) {
    if (segments.size() != ids.size()) {
      throw DimensionError("encode: " + std::to_string(segments.size()) + " segment ids for " +
                           std::to_string(ids.size()) + " tokens");
    }
    x = ops::add(x, ops::embedding(tape, params.get("encoder.segment"), segments));
  }
  for (std::size_t l = 0; l < config.encoder_layers; ++l) {
    Var bias;
    if (config.relative_bias) bias = tape.param(params.get(layer_name(l, "rel_bias")));
    x = encoder_layer(x, tape.param(params.get(layer_name(l, "Wq"))),
                      tape.param(params.get(layer_name(l, "Wk"))),
                      tape.param(params.get(layer_name(l, "Wv"))),
                      tape.param(params.get(layer_name(l, "Wo"))), bias,
                      config.relative_window);
  }
  const std::size_t last = ids.size() - 1;
  Var cls = ops::group_mean(x, {{last}});
  return {x, cls};
}

EncoderOutput encode_sequence(ParameterStore& params, const Config& config,
                              const SequenceLayout& layout) {
  Tape tape;
  EncodedSequence enc = encode(tape, params, config, layout.ids, layout.segments);
  return {enc.states.value(), enc.cls.value(), layout.truncated_tokens};
}

}  // namespace evigraph
