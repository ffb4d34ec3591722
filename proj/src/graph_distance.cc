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

#include "evigraph/graph_distance.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

// children[u] = (child, relation index), ascending by child then index.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> child_lists(
    const DirectedGraph& dg) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> children(dg.node_count);
  for (std::size_t r = 0; r < dg.relations.size(); ++r) {
    const auto [u, v] = dg.relations[r];
    if (u >= dg.node_count || v >= dg.node_count) {
      throw Error("relation endpoint out of range");
    }
    children[u].emplace_back(v, r);
  }
  for (auto& c : children) std::sort(c.begin(), c.end());
  return children;
}

}  // namespace

DirectedGraph orient_graph(const Graph& g) {
  DirectedGraph dg;
  dg.node_count = g.nodes.size();
  auto key = [&](std::size_t id) {
    const Node& n = g.nodes[id];
    return std::tuple(n.sentence_ordinal, n.tuple_ordinal, n.node_id);
  };
  for (const Edge& e : g.edges) {
    if (key(e.a) < key(e.b)) {
      dg.relations.emplace_back(e.a, e.b);
    } else {
      dg.relations.emplace_back(e.b, e.a);
    }
  }
  return dg;
}

DirectedGraph make_acyclic(const DirectedGraph& dg) {
  const auto children = child_lists(dg);
  enum class Mark { kNew, kActive, kDone };
  std::vector<Mark> mark(dg.node_count, Mark::kNew);
  std::vector<bool> removed(dg.relations.size(), false);

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t start = 0; start < dg.node_count; ++start) {
    if (mark[start] != Mark::kNew) continue;
    std::vector<Frame> stack{{start, 0}};
    mark[start] = Mark::kActive;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == children[f.node].size()) {
        mark[f.node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const auto [child, rel] = children[f.node][f.next++];
      if (mark[child] == Mark::kActive) {
        removed[rel] = true;
      } else if (mark[child] == Mark::kNew) {
        mark[child] = Mark::kActive;
        stack.push_back({child, 0});
      }
    }
  }

  DirectedGraph out;
  out.node_count = dg.node_count;
  for (std::size_t r = 0; r < dg.relations.size(); ++r) {
    if (!removed[r]) out.relations.push_back(dg.relations[r]);
  }
  return out;
}

SortedOrder topology_sort(const DirectedGraph& dg) {
  const auto children = child_lists(dg);
  std::vector<std::size_t> indegree(dg.node_count, 0);
  for (const auto& [u, v] : dg.relations) ++indegree[v];

  // Reverse postorder. Roots are expanded last-to-first and each finished
  // node is placed in front, so roots come out in input order and every
  // parent precedes its descendants.
  std::vector<bool> visited(dg.node_count, false);
  std::vector<std::size_t> postorder;
  postorder.reserve(dg.node_count);
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t r = dg.node_count; r-- > 0;) {
    if (indegree[r] != 0 || visited[r]) continue;
    visited[r] = true;
    std::vector<Frame> stack{{r, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& kids = children[f.node];
      if (f.next == kids.size()) {
        postorder.push_back(f.node);
        stack.pop_back();
        continue;
      }
      // Children are taken in descending id order so that, once reversed,
      // siblings appear ascending.
      const std::size_t child = kids[kids.size() - 1 - f.next++].first;
      if (!visited[child]) {
        visited[child] = true;
        stack.push_back({child, 0});
      }
    }
  }
  if (postorder.size() != dg.node_count) {
    throw Error("cycle detected: topology_sort needs an acyclic graph");
  }

  SortedOrder out;
  out.nodes.assign(postorder.rbegin(), postorder.rend());
  std::vector<std::size_t> pos(dg.node_count);
  for (std::size_t i = 0; i < out.nodes.size(); ++i) pos[out.nodes[i]] = i;
  for (const auto& [u, v] : dg.relations) {
    if (pos[u] >= pos[v]) throw Error("cycle detected: topology_sort needs an acyclic graph");
  }
  return out;
}

std::vector<std::string> reorder_sentences(const EvidenceSet& es, const Graph& evidence_graph,
                                           const SortedOrder& order) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t id : order.nodes) {
    const Node& n = evidence_graph.nodes.at(id);
    if (n.synthetic) continue;
    if (seen.insert(n.sentence_id).second) out.push_back(n.sentence_id);
  }
  for (const Sentence& s : es.evidence) {
    if (seen.insert(s.sentence_id).second) out.push_back(s.sentence_id);
  }
  return out;
}

SortedOrder sort_evidence(const EvidenceSet& es, const Graph& evidence_graph) {
  SortedOrder order = topology_sort(make_acyclic(orient_graph(evidence_graph)));
  order.sentences = reorder_sentences(es, evidence_graph, order);
  return order;
}

std::vector<std::string> document_order(const EvidenceSet& es) {
  std::vector<std::string> out;
  for (const Sentence& s : es.evidence) out.push_back(s.sentence_id);
  return out;
}

}  // namespace evigraph
