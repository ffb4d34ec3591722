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

#ifndef EVIGRAPH_GRAPH_DISTANCE_H_
#define EVIGRAPH_GRAPH_DISTANCE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "evigraph/data_model.h"
#include "evigraph/graph.h"

namespace evigraph {

// Nodes are 0..node_count-1; relations are parent -> child pairs.
struct DirectedGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> relations;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;
};

struct SortedOrder {
  std::vector<std::size_t> nodes;
  // Evidence sentence ids by first appearance of their nodes; filled by
  // sort_evidence, empty for a bare topology_sort.
  std::vector<std::string> sentences;
};

// Points every undirected edge from the node earlier in
// (sentence, tuple, node_id) order to the later one.
DirectedGraph orient_graph(const Graph& g);

// Drops the back edges found by a depth-first traversal that starts from
// nodes in id order and follows children in ascending id order. Self
// relations are always back edges. Duplicate relations are kept.
DirectedGraph make_acyclic(const DirectedGraph& dg);

// Depth-first topological order starting from nodes with no incoming
// relations. Root nodes keep their input order relative to each other.
// Throws Error("cycle detected ...") when dg has a cycle.
SortedOrder topology_sort(const DirectedGraph& dg);

// Sentence ids ordered by the first node of each sentence in order.nodes;
// sentences without nodes follow in their original order.
std::vector<std::string> reorder_sentences(const EvidenceSet& es, const Graph& evidence_graph,
                                           const SortedOrder& order);

// orient_graph + make_acyclic + topology_sort + reorder_sentences.
SortedOrder sort_evidence(const EvidenceSet& es, const Graph& evidence_graph);

// Evidence sentence ids in their stored order.
std::vector<std::string> document_order(const EvidenceSet& es);

}  // namespace evigraph

#endif  // EVIGRAPH_GRAPH_DISTANCE_H_
