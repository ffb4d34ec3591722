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

#include "evigraph/gcn.h"

#include <cmath>

namespace evigraph {

Tensor normalize_adjacency(const Graph& g) {
  const std::size_t n = g.nodes.size();
  Tensor a = Tensor::identity(n);
  for (const Edge& e : g.edges) {
    a.at(e.a, e.b) = 1.0;
    a.at(e.b, e.a) = 1.0;
  }
  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) deg += a.at(i, j);
    inv_sqrt_deg[i] = 1.0 / std::sqrt(deg);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) *= inv_sqrt_deg[i] * inv_sqrt_deg[j];
  }
  return a;
}

std::vector<std::vector<std::size_t>> node_token_groups(const Graph& g,
                                                        const SequenceLayout& layout,
                                                        std::vector<std::string>* warnings) {
  std::vector<std::vector<std::size_t>> groups(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const Node& n = g.nodes[i];
    auto it = layout.positions.find(n.sentence_id);
    if (it != layout.positions.end()) {
      for (std::size_t t = n.span.start; t < n.span.end && t < it->second.size(); ++t) {
        if (it->second[t]) groups[i].push_back(*it->second[t]);
      }
    }
    if (groups[i].empty() && warnings != nullptr) {
      warnings->push_back("node " + std::to_string(n.node_id) + " ('" + n.text +
                          "') has no tokens inside max_seq_len; using a zero vector");
    }
  }
  return groups;
}

Var init_node_matrix(Var states, const std::vector<std::vector<std::size_t>>& groups,
                     Var projection) {
  return ops::matmul(ops::group_mean(states, groups), projection);
}

Var gcn_layer(Var h, Var adjacency, Var w) {
  return ops::relu(ops::matmul(ops::matmul(adjacency, h), w));
}

Var gcn_forward(Var h, Var adjacency, std::span<const Var> weights) {
  for (const Var& w : weights) h = gcn_layer(h, adjacency, w);
  return h;
}

Tensor gcn_layer(const Tensor& h, const Tensor& adjacency, const Tensor& w) {
  return relu(matmul(matmul(adjacency, h), w));
}

}  // namespace evigraph
