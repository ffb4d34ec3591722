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

#ifndef EVIGRAPH_GAT_H_
#define EVIGRAPH_GAT_H_

#include "evigraph/autodiff.h"

namespace evigraph {

// Claim nodes attend over evidence nodes.
//   e_ij = (W_c h_c^i) . (W_e h_e^j)      W_c, W_e: F x d
// Throws DimensionError("no evidence nodes") for an empty evidence side.
Var attention_scores(Var claim_nodes, Var evidence_nodes, Var w_c, Var w_e);
// Row-wise softmax over evidence nodes.
Var normalize_attention(Var scores);
// x_i = sum_j alpha_ij h_e^j
Var claim_centric(Var alpha, Var evidence_nodes);

// Feature row [x, y, x - y, x * y] for every row pair; 4d wide.
Var alignment_features(Var x, Var y);
// a_i = W_a [h_c^i, x_i, h_c^i - x_i, h_c^i * x_i]     W_a: d x 4d
Var align(Var claim_nodes, Var centric, Var w_a);

// Two-layer perceptron head over concat(mean_rows(aligned), cls):
// relu(z W1 + b1) W2 + b2, giving 1 x 3 logits.
struct HeadParams {
  Var w1, b1, w2, b2;
};
Var classify(Var aligned, Var cls, const HeadParams& head);

}  // namespace evigraph

#endif  // EVIGRAPH_GAT_H_
