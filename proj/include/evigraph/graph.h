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

#ifndef EVIGRAPH_GRAPH_H_
#define EVIGRAPH_GRAPH_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evigraph/data_model.h"
#include "evigraph/json_io.h"

namespace evigraph {

// An argument span promoted to a graph node. sentence_ordinal and
// tuple_ordinal locate the node inside the source EvidenceSet; tuple_ordinal
// is unique across the whole graph.
struct Node {
  std::size_t node_id = 0;
  std::string sentence_id;
  std::string tuple_id;
  std::size_t sentence_ordinal = 0;
  std::size_t tuple_ordinal = 0;
  Role role = Role::kArgument;
  std::string text;
  Span span;
  // True only for the placeholder node added to an otherwise empty graph.
  bool synthetic = false;

  friend bool operator==(const Node&, const Node&) = default;
};

enum class EdgeKind { kIntraTuple, kCrossTuple };
std::string_view edge_kind_name(EdgeKind kind);

// Undirected; stored with a < b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  EdgeKind kind = EdgeKind::kIntraTuple;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& x, const Edge& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

enum class GraphOrigin { kClaim, kEvidence };

struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;  // sorted, no duplicates, no self-loops
  GraphOrigin origin = GraphOrigin::kEvidence;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
  friend bool operator==(const Graph&, const Graph&) = default;
};

// One node per argument whose role is verb, argument, location or temporal,
// in argument order. node_id and the ordinals are left for build_graph.
std::vector<Node> extract_nodes(const SrlTuple& tuple);

// Complete graph over nodes of one tuple, using their node_ids.
std::vector<Edge> intra_tuple_edges(const std::vector<Node>& nodes);

// Word-level similarity test for nodes of different tuples: equal token
// sequences, contiguous containment, or a multiset overlap larger than half
// the shorter span. Texts with no tokens never link.
bool cross_tuple_link(std::string_view a, std::string_view b);
bool cross_tuple_link(const Node& a, const Node& b);

// Builds the semantic graph over the claim sentence or the evidence
// sentences. Node ids follow (sentence, tuple, argument) order.
Graph build_graph(const EvidenceSet& input, GraphOrigin origin);

// Returns g unchanged when it has nodes; otherwise a single synthetic
// argument node covering the first sentence of the requested side (or no
// tokens at all when that side has no sentences).
Graph with_fallback_node(Graph g, const EvidenceSet& input);

// Process-wide count of build_graph calls, for instrumentation.
std::size_t graph_build_count();

Json graph_to_json(const Graph& g);

}  // namespace evigraph

#endif  // EVIGRAPH_GRAPH_H_
