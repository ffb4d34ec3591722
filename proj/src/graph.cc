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

#include "evigraph/graph.h"

#include <algorithm>
#include <atomic>
#include <map>

namespace evigraph {
namespace {

std::atomic<std::size_t> g_build_count{0};

bool contains_contiguous(const std::vector<std::string>& hay,
                         const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

std::size_t multiset_overlap(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::map<std::string_view, std::size_t> counts;
  for (const std::string& w : a) ++counts[w];
  std::size_t overlap = 0;
  for (const std::string& w : b) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

}  // namespace

std::string_view edge_kind_name(EdgeKind kind) {
  return kind == EdgeKind::kIntraTuple ? "intra_tuple" : "cross_tuple";
}

std::vector<Node> extract_nodes(const SrlTuple& tuple) {
  std::vector<Node> out;
  for (const SrlArgument& arg : tuple.arguments) {
    if (arg.role == Role::kOther) continue;
    Node n;
    n.sentence_id = tuple.sentence_id;
    n.tuple_id = tuple.tuple_id;
    n.role = arg.role;
    n.text = arg.text;
    n.span = arg.span;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<Edge> intra_tuple_edges(const std::vector<Node>& nodes) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const std::size_t a = std::min(nodes[i].node_id, nodes[j].node_id);
      const std::size_t b = std::max(nodes[i].node_id, nodes[j].node_id);
      out.push_back(Edge{a, b, EdgeKind::kIntraTuple});
    }
  }
  return out;
}

bool cross_tuple_link(std::string_view a, std::string_view b) {
  const std::vector<std::string> ta = tokenize_words(a);
  const std::vector<std::string> tb = tokenize_words(b);
  if (ta.empty() || tb.empty()) return false;
  if (ta == tb) return true;
  if (contains_contiguous(ta, tb) || contains_contiguous(tb, ta)) return true;
  // overlap > min/2, kept in integers
  return 2 * multiset_overlap(ta, tb) > std::min(ta.size(), tb.size());
}

bool cross_tuple_link(const Node& a, const Node& b) { return cross_tuple_link(a.text, b.text); }

Graph build_graph(const EvidenceSet& input, GraphOrigin origin) {
  g_build_count.fetch_add(1, std::memory_order_relaxed);
  Graph g;
  g.origin = origin;
  std::vector<const Sentence*> sentences;
  if (origin == GraphOrigin::kClaim) {
    sentences.push_back(&input.claim);
  } else {
    for (const Sentence& s : input.evidence) sentences.push_back(&s);
  }

  std::size_t tuple_ordinal = 0;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    for (const SrlTuple& tuple : sentences[si]->tuples) {
      std::vector<Node> nodes = extract_nodes(tuple);
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        nodes[k].node_id = g.nodes.size() + k;
        nodes[k].sentence_ordinal = si;
        nodes[k].tuple_ordinal = tuple_ordinal;
      }
      for (const Edge& e : intra_tuple_edges(nodes)) g.edges.push_back(e);
      g.nodes.insert(g.nodes.end(), nodes.begin(), nodes.end());
      ++tuple_ordinal;
    }
  }

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      if (g.nodes[i].tuple_ordinal == g.nodes[j].tuple_ordinal) continue;
      if (cross_tuple_link(g.nodes[i], g.nodes[j])) {
        g.edges.push_back(Edge{i, j, EdgeKind::kCrossTuple});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Graph with_fallback_node(Graph g, const EvidenceSet& input) {
  if (!g.empty()) return g;
  Node n;
  n.synthetic = true;
  n.role = Role::kArgument;
  n.tuple_id = "synthetic";
  const Sentence* s = nullptr;
  if (g.origin == GraphOrigin::kClaim) {
    s = &input.claim;
  } else if (!input.evidence.empty()) {
    s = &input.evidence.front();
  }
  if (s != nullptr) {
    n.sentence_id = s->sentence_id;
    n.span = Span{0, s->tokens.size()};
    n.text = s->text();
  }
  g.nodes.push_back(std::move(n));
  return g;
}

std::size_t graph_build_count() { return g_build_count.load(std::memory_order_relaxed); }

Json graph_to_json(const Graph& g) {
  Json nodes = Json::array();
  for (const Node& n : g.nodes) {
    Json j = {{"node_id", n.node_id},
              {"sentence_id", n.sentence_id},
              {"tuple_id", n.tuple_id},
              {"role", std::string(role_name(n.role))},
              {"text", n.text},
              {"span", {n.span.start, n.span.end}}};
    if (n.synthetic) j["synthetic"] = true;
    nodes.push_back(std::move(j));
  }
  Json edges = Json::array();
  for (const Edge& e : g.edges) {
    edges.push_back({{"source", e.a}, {"target", e.b}, {"kind", std::string(edge_kind_name(e.kind))}});
  }
  return {{"origin", g.origin == GraphOrigin::kClaim ? "claim" : "evidence"},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

}  // namespace evigraph
