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


#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "evigraph/data_model.h"
#include "evigraph/errors.h"
#include "evigraph/graph.h"
#include "evigraph/graph_distance.h"
#include "evigraph/json_io.h"
#include "oracles.h"

using namespace evigraph;

namespace {

struct Arg {
  Role role;
  std::size_t start;
  std::size_t end;
};

// One sentence of whitespace-separated words with one tuple per Arg list.
Sentence make_sentence(const std::string& id, const std::string& text,
                       const std::vector<std::vector<Arg>>& tuples) {
  Sentence s;
  s.sentence_id = id;
  s.source_doc = "doc";
  std::size_t i = 0;
  std::string word;
  for (std::size_t p = 0; p <= text.size(); ++p) {
    if (p == text.size() || text[p] == ' ') {
      if (!word.empty()) s.tokens.push_back(Token{word, i++});
      word.clear();
    } else {
      word += text[p];
    }
  }
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    SrlTuple tuple{id + "." + std::to_string(t), id, {}};
    for (const Arg& a : tuples[t]) {
      tuple.arguments.push_back({a.role, s.span_text({a.start, a.end}), {a.start, a.end}});
    }
    s.tuples.push_back(tuple);
  }
  validate(s, id);
  return s;
}

EvidenceSet fig3() {
  return parse_srl_document(
      read_text_file(std::filesystem::path(EVIGRAPH_FIXTURE_DIR) / "fig3.json"));
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Edge& e : g.edges) out.emplace_back(e.a, e.b);
  return out;
}

// Every permutation of n nodes that respects the relations.
std::set<std::vector<std::size_t>> all_topological_orders(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::set<std::vector<std::size_t>> out;
  do {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (const auto& [u, v] : rel) ok = ok && pos[u] < pos[v];
    if (ok) out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("extract_nodes") {
    const Sentence s = make_sentence(
        "e1", "Rodney King riots occurred in Los Angeles County",
        {{{Role::kArgument, 0, 3}, {Role::kVerb, 3, 4}, {Role::kLocation, 4, 8}},
         {{Role::kVerb, 3, 4}},
         {{Role::kVerb, 3, 4}, {Role::kOther, 4, 8}}});
    CHECK(extract_nodes(s.tuples[0]).size() == 3);
    CHECK(extract_nodes(s.tuples[1]).size() == 1);
    const auto other = extract_nodes(s.tuples[2]);
    REQUIRE(other.size() == 1);
    CHECK(other[0].role == Role::kVerb);
  }

  TEST_CASE("intra-tuple edges form a clique") {
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 7u}) {
      std::vector<Node> nodes(n);
      for (std::size_t i = 0; i < n; ++i) nodes[i].node_id = 10 + i;
      const auto edges = intra_tuple_edges(nodes);
      CHECK(edges.size() == n * (n - (n > 0 ? 1 : 0)) / 2);
      for (const Edge& e : edges) {
        CHECK(e.a < e.b);
        CHECK(e.kind == EdgeKind::kIntraTuple);
      }
    }
  }

  TEST_CASE("link examples") {
    CHECK(cross_tuple_link("Los Angeles County", "Los Angeles County"));
    CHECK(cross_tuple_link("the most populous county in the USA", "county"));
    CHECK(cross_tuple_link("1992 Los Angeles riots", "Los Angeles County"));
    CHECK_FALSE(cross_tuple_link("Rodney King", "USA"));
    // exactly half does not link
    CHECK_FALSE(cross_tuple_link("a b", "a c"));
    CHECK_FALSE(cross_tuple_link("", "x"));
  }

  TEST_CASE("link agrees with the brute-force rule and is symmetric") {
    Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = testing::random_words(rng, 6);
      const auto b = testing::random_words(rng, 6);
      const std::string ta = testing::join_words(a);
      const std::string tb = testing::join_words(b);
      CHECK(cross_tuple_link(ta, tb) == testing::brute_link(a, b));
      CHECK(cross_tuple_link(ta, tb) == cross_tuple_link(tb, ta));
    }
  }

  TEST_CASE("figure fixture matches the golden graph") {
    const EvidenceSet es = fig3();
    const Json got = {{"claim", graph_to_json(build_graph(es, GraphOrigin::kClaim))},
                      {"evidence", graph_to_json(build_graph(es, GraphOrigin::kEvidence))}};
    const Json want = parse_json(
        read_text_file(std::filesystem::path(EVIGRAPH_FIXTURE_DIR) / "fig3_graph.golden.json"));
    CHECK(got == want);

    const Graph g = build_graph(es, GraphOrigin::kEvidence);
    std::vector<std::size_t> lac;
    for (const Node& n : g.nodes) {
      if (n.text.find("Los Angeles County") != std::string::npos) lac.push_back(n.node_id);
    }
    REQUIRE(lac.size() == 2);
    CHECK(std::count(g.edges.begin(), g.edges.end(),
                     Edge{lac[0], lac[1], EdgeKind::kCrossTuple}) == 1);
  }

  TEST_CASE("small cases") {
    EvidenceSet es;
    es.claim = make_sentence("c", "x y", {{{Role::kVerb, 0, 1}}});
    es.evidence = {make_sentence("s", "Paris is big", {{{Role::kArgument, 0, 1}, {Role::kVerb, 1, 2}}})};
    Graph g = build_graph(es, GraphOrigin::kEvidence);
    CHECK(g.edges.size() == 1);
    CHECK(g.edges[0].kind == EdgeKind::kIntraTuple);

    es.evidence.push_back(
        make_sentence("t", "Rome was old", {{{Role::kArgument, 0, 1}, {Role::kVerb, 1, 2}}}));
    g = build_graph(es, GraphOrigin::kEvidence);
    CHECK(std::none_of(g.edges.begin(), g.edges.end(),
                       [](const Edge& e) { return e.kind == EdgeKind::kCrossTuple; }));
  }

  TEST_CASE("edge set equals the brute-force construction") {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
      const EvidenceSet es = testing::random_evidence_set(rng, 5);
      const Graph g = build_graph(es, GraphOrigin::kEvidence);
      CHECK(g == build_graph(es, GraphOrigin::kEvidence));
      std::vector<Edge> want;
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          const Node& a = g.nodes[i];
          const Node& b = g.nodes[j];
          if (a.tuple_id == b.tuple_id && a.sentence_id == b.sentence_id) {
            want.push_back({i, j, EdgeKind::kIntraTuple});
          } else if (testing::brute_link(tokenize_words(a.text), tokenize_words(b.text))) {
            want.push_back({i, j, EdgeKind::kCrossTuple});
          }
        }
      }
      CHECK(g.edges == want);
      for (const Node& n : g.nodes) CHECK(n.role != Role::kOther);
    }
  }
}

TEST_SUITE("graph_distance") {
  TEST_CASE("orientation follows document order") {
    const EvidenceSet es = fig3();
    const Graph g = build_graph(es, GraphOrigin::kEvidence);
    const DirectedGraph dg = orient_graph(g);
    REQUIRE(dg.relations.size() == g.edges.size());
    for (const auto& [u, v] : dg.relations) {
      CHECK(g.nodes[u].sentence_ordinal <= g.nodes[v].sentence_ordinal);
      if (g.nodes[u].sentence_id != g.nodes[v].sentence_id) {
        CHECK(g.nodes[u].sentence_id == "e1");
        CHECK(g.nodes[v].sentence_id == "e2");
      }
    }
    CHECK(orient_graph(Graph{}).relations.empty());
  }

  TEST_CASE("make_acyclic examples") {
    const DirectedGraph two{2, {{0, 1}, {1, 0}}};
    const DirectedGraph fixed = make_acyclic(two);
    CHECK(fixed.relations == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

    const DirectedGraph chain{3, {{0, 1}, {1, 2}}};
    CHECK(make_acyclic(chain) == chain);

    const DirectedGraph self{2, {{0, 0}, {0, 1}}};
    CHECK(make_acyclic(self).relations == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  }

  TEST_CASE("topology_sort examples") {
    CHECK(topology_sort({3, {{0, 1}, {1, 2}}}).nodes == std::vector<std::size_t>{0, 1, 2});
    CHECK(topology_sort({2, {}}).nodes == std::vector<std::size_t>{0, 1});

    const std::vector<std::pair<std::size_t, std::size_t>> diamond = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    const auto order = topology_sort({4, diamond}).nodes;
    CHECK(all_topological_orders(4, diamond).count(order) == 1);
    CHECK(order.front() == 0);
    CHECK(order.back() == 3);

    CHECK_THROWS_AS(topology_sort({2, {{0, 1}, {1, 0}}}), Error);
  }

  TEST_CASE("random small DAGs sort into a legal order") {
    Rng rng(47);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.index(6);
      DirectedGraph dg{n, {}};
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (u != v && rng.coin(0.3)) dg.relations.emplace_back(u, v);
        }
      }
      const DirectedGraph dag = make_acyclic(dg);
      CHECK_FALSE(testing::has_cycle(n, dag.relations));
      CHECK(all_topological_orders(n, dag.relations).count(topology_sort(dag).nodes) == 1);
    }
  }

  TEST_CASE("removed relations are exactly the DFS back edges") {
    Rng rng(59);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng.index(12);
      DirectedGraph dg{n, {}};
      for (std::size_t k = rng.index(3 * n); k > 0; --k) dg.relations.emplace_back(rng.index(n), rng.index(n));
      const auto back = testing::dfs_back_edges(n, dg.relations);
      std::vector<std::pair<std::size_t, std::size_t>> kept;
      for (std::size_t r = 0; r < dg.relations.size(); ++r) {
        if (back.count(r) == 0) kept.push_back(dg.relations[r]);
      }
      CHECK(make_acyclic(dg).relations == kept);
    }
  }

  TEST_CASE("reorder_sentences") {
    EvidenceSet es;
    es.claim = make_sentence("c", "x y", {{{Role::kVerb, 0, 1}}});
    es.evidence = {make_sentence("s1", "a b", {{{Role::kVerb, 0, 1}}}),
                   make_sentence("s2", "c d", {{{Role::kVerb, 0, 1}}}),
                   make_sentence("s3", "e f", {})};
    const Graph g = build_graph(es, GraphOrigin::kEvidence);
    REQUIRE(g.size() == 2);
    SortedOrder order;
    order.nodes = {1, 0};
    CHECK(reorder_sentences(es, g, order) == std::vector<std::string>{"s2", "s1", "s3"});
  }

  TEST_CASE("linked sentences end up adjacent") {
    EvidenceSet es;
    es.claim = make_sentence("c", "x y", {{{Role::kVerb, 0, 1}}});
    const std::vector<std::string> texts = {"Marlo lives in Quenby", "Tarn sings loudly",
                                            "Velt eats apples", "Oris reads books",
                                            "Quenby is a harbor"};
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const bool last = i + 1 == texts.size();
      std::vector<Arg> args = {{Role::kArgument, 0, 1}, {Role::kVerb, 1, 2}};
      if (i == 0) args.push_back({Role::kLocation, 2, 4});
      if (last) args.push_back({Role::kArgument, 2, 4});
      es.evidence.push_back(make_sentence("s" + std::to_string(i + 1), texts[i], {args}));
    }
    const Graph g = build_graph(es, GraphOrigin::kEvidence);
    const SortedOrder order = sort_evidence(es, g);
    REQUIRE(order.sentences.size() == 5);
    const auto p1 = std::find(order.sentences.begin(), order.sentences.end(), "s1");
    const auto p5 = std::find(order.sentences.begin(), order.sentences.end(), "s5");
    CHECK(std::abs(std::distance(p1, p5)) == 1);
  }

  TEST_CASE("sentence order is a permutation of the evidence") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
      EvidenceSet es = testing::random_evidence_set(rng, 6);
      if (rng.coin(0.3)) es.evidence.front().tuples.clear();
      const Graph g = build_graph(es, GraphOrigin::kEvidence);
      auto got = sort_evidence(es, g).sentences;
      auto want = document_order(es);
      CHECK(sort_evidence(es, g).sentences == got);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}
