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

#include "evigraph/gat.h"

#include "evigraph/errors.h"

namespace evigraph {

Var attention_scores(Var claim_nodes, Var evidence_nodes, Var w_c, Var w_e) {
  if (evidence_nodes.rows() == 0) throw DimensionError("no evidence nodes");
  Var qc = ops::matmul_nt(claim_nodes, w_c);
  Var ke = ops::matmul_nt(evidence_nodes, w_e);
  return ops::matmul_nt(qc, ke);
}

Var normalize_attention(Var scores) { return ops::softmax_rows(scores); }

Var claim_centric(Var alpha, Var evidence_nodes) { return ops::matmul(alpha, evidence_nodes); }

Var alignment_features(Var x, Var y) {
  return ops::concat_cols({x, y, ops::sub(x, y), ops::mul(x, y)});
}

Var align(Var claim_nodes, Var centric, Var w_a) {
  return ops::matmul_nt(alignment_features(claim_nodes, centric), w_a);
}

Var classify(Var aligned, Var cls, const HeadParams& head) {
  Var g = ops::mean_rows(aligned);
  Var z = ops::concat_cols({g, cls});
  Var hidden = ops::relu(ops::linear(z, head.w1, head.b1));
  return ops::linear(hidden, head.w2, head.b2);
}

}  // namespace evigraph
