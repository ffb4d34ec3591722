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

#ifndef EVIGRAPH_ENCODER_H_
#define EVIGRAPH_ENCODER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evigraph/autodiff.h"
#include "evigraph/config.h"
#include "evigraph/data_model.h"

namespace evigraph {

inline constexpr std::size_t kSepId = 0;
inline constexpr std::size_t kClsId = 1;

// Segment ids added through encoder.segment.
inline constexpr std::size_t kClaimSegment = 0;
inline constexpr std::size_t kEvidenceSegment = 1;
inline constexpr std::size_t kMarkerSegment = 2;  // [SEP] and [CLS]
inline constexpr std::size_t kNumSegments = 3;

// Hashed vocabulary: ids 0 and 1 are reserved for [SEP] and [CLS]; every word
// maps to 2 + fnv1a(normalized word) mod (vocab_size - 2).
std::size_t token_id(std::string_view word, std::size_t vocab_size);

// Token sequence fed to the encoder:
//   claim [SEP] evidence_1 [SEP] ... evidence_n [SEP] [CLS]
// with evidence sentences in the requested order. When the sequence would
// exceed max_seq_len the evidence tail is dropped; the claim never is.
struct SequenceLayout {
  std::vector<std::size_t> ids;
  std::vector<std::size_t> segments;
  std::vector<std::string> words;
  // Sequence position of each token, keyed by sentence_id; nullopt when the
  // token was truncated away.
  std::map<std::string, std::vector<std::optional<std::size_t>>> positions;
  std::vector<std::string> evidence_order;
  std::size_t truncated_tokens = 0;

  std::size_t length() const { return ids.size(); }
  bool truncated() const { return truncated_tokens > 0; }
};

// Throws DimensionError when the claim alone does not fit.
SequenceLayout layout_sequence(const EvidenceSet& es, const std::vector<std::string>& evidence_order,
                               std::size_t vocab_size, std::size_t max_seq_len);

// Registers encoder.embedding, encoder.segment and encoder.layer<l>.{Wq,Wk,Wv,Wo,rel_bias}.
void add_encoder_params(ParameterStore& params, const Config& config);

struct EncodedSequence {
  Var states;  // n x encoder_dim
  Var cls;     // 1 x encoder_dim, the last position
};

// One single-head self-attention block:
//   S = (X Wq)(X Wk)^T / sqrt(d) + B[clip(j - i)]
//   X' = X + relu(softmax_rows(S) (X Wv) Wo)
// rel_bias may be invalid, in which case no positional term is added.
Var encoder_layer(Var x, Var wq, Var wk, Var wv, Var wo, Var rel_bias, std::size_t window);

// segments is either empty or one id per token.
EncodedSequence encode(Tape& tape, ParameterStore& params, const Config& config,
                       const std::vector<std::size_t>& ids,
                       const std::vector<std::size_t>& segments = {});

// Tape-free convenience result.
struct EncoderOutput {
  Tensor states;
  Tensor cls;
  std::size_t truncated_tokens = 0;
};
EncoderOutput encode_sequence(ParameterStore& params, const Config& config,
                              const SequenceLayout& layout);

}  // namespace evigraph

#endif  // EVIGRAPH_ENCODER_H_
