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

#ifndef EVIGRAPH_GCN_H_
#define EVIGRAPH_GCN_H_

#include <span>
#include <string>
#include <vector>

#include "evigraph/autodiff.h"
#include "evigraph/encoder.h"
#include "evigraph/graph.h"

namespace evigraph {

// D^{-1/2} (A + I) D^{-1/2}, with D the row sums of A + I.
Tensor normalize_adjacency(const Graph& g);

// Token-position groups for every node of g: the sequence positions of the
// node's span tokens that survived truncation. A node whose span was cut
// entirely gets an empty group and a warning.
std::vector<std::vector<std::size_t>> node_token_groups(const Graph& g,
                                                        const SequenceLayout& layout,
                                                        std::vector<std::string>* warnings);

// H0 = mean(contextual vectors of each node's tokens) * projection.
// projection is encoder_dim x node_dim; empty groups give zero rows.
Var init_node_matrix(Var states, const std::vector<std::vector<std::size_t>>& groups,
                     Var projection);

// relu(adjacency * h * w)
Var gcn_layer(Var h, Var adjacency, Var w);
// Applies gcn_layer once per weight; no weights returns h unchanged.
Var gcn_forward(Var h, Var adjacency, std::span<const Var> weights);

Tensor gcn_layer(const Tensor& h, const Tensor& adjacency, const Tensor& w);

}  // namespace evigraph

#endif  // EVIGRAPH_GCN_H_
