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

#include <cmath>
#include <filesystem>
#include <numeric>

#include "evigraph/autodiff.h"
#include "evigraph/config.h"
#include "evigraph/encoder.h"
#include "evigraph/errors.h"
#include "evigraph/gat.h"
#include "evigraph/gcn.h"
#include "evigraph/json_io.h"
#include "evigraph/model.h"
#include "oracles.h"

using namespace evigraph;
using evigraph::testing::graph_with_edges;
using evigraph::testing::permute_both;
using evigraph::testing::permute_rows;
using evigraph::testing::random_tensor;

namespace {

Config small_config() {
  Config c;
  c.encoder_dim = 6;
  c.encoder_layers = 2;
  c.relative_window = 4;
  c.vocab_size = 50;
  c.max_seq_len = 64;
  return c;
}

void randomize(ParameterStore& params, Rng& rng, double scale) {
  for (Parameter* p : params.all()) {
    for (double& v : p->value().data()) v = rng.uniform(-scale, scale);
  }
}

Sentence plain_sentence(const std::string& id, const std::string& text) {
  Sentence s;
  s.sentence_id = id;
  s.source_doc = "d";
  s.tokens = tokenize(text);
  return s;
}

EvidenceSet three_sentences() {
  EvidenceSet es;
  es.claim = plain_sentence("c", "alpha beta gamma");
  es.evidence = {plain_sentence("s1", "delta epsilon"), plain_sentence("s2", "zeta eta theta iota"),
                 plain_sentence("s3", "kappa")};
  return es;
}

}  // namespace

TEST_SUITE("encoder") {
  TEST_CASE("layout places claim, separators and the final CLS") {
    const EvidenceSet es = three_sentences();
    const SequenceLayout layout = layout_sequence(es, {"s2", "s1", "s3"}, 50, 64);
    CHECK(layout.length() == 3 + 1 + 4 + 1 + 2 + 1 + 1 + 1 + 1);
    CHECK(layout.ids.back() == kClsId);
    CHECK(layout.ids[3] == kSepId);
    CHECK(layout.segments.size() == layout.ids.size());
    CHECK(layout.segments[0] == kClaimSegment);
    CHECK(layout.segments[4] == kEvidenceSegment);
    CHECK(layout.segments.back() == kMarkerSegment);
    CHECK(layout.words[4] == "zeta");
    CHECK(layout.positions.at("s1")[0] == std::optional<std::size_t>(9));
    CHECK(layout.evidence_order == std::vector<std::string>{"s2", "s1", "s3"});
    CHECK_FALSE(layout.truncated());
    for (std::size_t id : layout.ids) CHECK(id < 50);
  }

  TEST_CASE("truncation drops evidence tokens past the budget") {
    const EvidenceSet es = three_sentences();
    const SequenceLayout layout = layout_sequence(es, {"s1", "s2", "s3"}, 50, 10);
    CHECK(layout.length() <= 10);
    CHECK(layout.ids.back() == kClsId);
    CHECK(layout.truncated());
    std::size_t kept = 0;
    for (const auto& [sid, pos] : layout.positions) {
      if (sid == "c") continue;
      for (const auto& p : pos) kept += p.has_value();
    }
    CHECK(kept + layout.truncated_tokens == 7);
    CHECK_THROWS_AS(layout_sequence(es, {}, 50, 4), DimensionError);
    CHECK_NOTHROW(layout_sequence(es, {}, 50, 5));
    CHECK_THROWS_AS(layout_sequence(es, {"nope"}, 50, 64), Error);
  }

  TEST_CASE("single token plus CLS") {
    Config c = small_config();
    ParameterStore params;
    add_encoder_params(params, c);
    Rng rng(1);
    randomize(params, rng, 0.3);
    Tape tape;
    const EncodedSequence enc = encode(tape, params, c, {7, kClsId});
    CHECK(enc.states.rows() == 2);
    CHECK(enc.states.cols() == c.encoder_dim);
    CHECK(enc.cls.rows() == 1);
    CHECK(enc.cls.value().all_finite());
    CHECK_THROWS_AS(encode(tape, params, c, {7, kClsId}, {0}), DimensionError);
    CHECK_THROWS_AS(encode(tape, params, c, {}), DimensionError);
  }

  TEST_CASE("evidence order matters only through the relative bias") {
    Config c = small_config();
    ParameterStore params;
    add_encoder_params(params, c);
    Rng rng(2);
    randomize(params, rng, 0.5);
    const EvidenceSet es = three_sentences();
    const auto a = layout_sequence(es, {"s1", "s2", "s3"}, c.vocab_size, c.max_seq_len);
    const auto b = layout_sequence(es, {"s3", "s2", "s1"}, c.vocab_size, c.max_seq_len);
    CHECK(max_abs_diff(encode_sequence(params, c, a).cls, encode_sequence(params, c, b).cls) > 1e-6);

    Config flat = c;
    flat.relative_bias = false;
    CHECK(max_abs_diff(encode_sequence(params, flat, a).cls, encode_sequence(params, flat, b).cls) <
          1e-12);
  }

  TEST_CASE("zero relative bias equals no bias term") {
    Config c = small_config();
    ParameterStore params;
    add_encoder_params(params, c);
    Rng rng(3);
    randomize(params, rng, 0.5);
    for (std::size_t l = 0; l < c.encoder_layers; ++l) {
      params.get("encoder.layer" + std::to_string(l) + ".rel_bias").value().fill(0.0);
    }
    Config flat = c;
    flat.relative_bias = false;
    const auto layout = layout_sequence(three_sentences(), {"s1", "s2", "s3"}, c.vocab_size, c.max_seq_len);
    const EncoderOutput with = encode_sequence(params, c, layout);
    const EncoderOutput without = encode_sequence(params, flat, layout);
    CHECK(with.states == without.states);
  }
}

TEST_SUITE("gcn") {
  TEST_CASE("adjacency examples") {
    CHECK(normalize_adjacency(graph_with_edges(1, {})) == Tensor::from_rows({{1.0}}));
    const Tensor two = normalize_adjacency(graph_with_edges(2, {{0, 1}}));
    CHECK(max_abs_diff(two, Tensor::from_rows({{0.5, 0.5}, {0.5, 0.5}})) < 1e-15);
    CHECK(normalize_adjacency(graph_with_edges(2, {})) == Tensor::identity(2));
  }

  TEST_CASE("adjacency matches the definition") {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.index(12);
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (rng.coin(0.3)) edges.emplace_back(i, j);
        }
      }
      const Tensor a = normalize_adjacency(graph_with_edges(n, edges));
      CHECK(max_abs_diff(a, testing::brute_adjacency(n, edges)) <= 1e-12);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) CHECK(a.at(i, j) == a.at(j, i));
      }
    }
  }

  TEST_CASE("layer examples") {
    const Tensor h = Tensor::from_rows({{2, 0}, {0, 2}});
    CHECK(gcn_layer(h, Tensor::identity(2), Tensor::identity(2)) == h);
    CHECK(max_abs_diff(gcn_layer(h, Tensor::from_rows({{0.5, 0.5}, {0.5, 0.5}}), Tensor::identity(2)),
                       Tensor::from_rows({{1, 1}, {1, 1}})) < 1e-15);
    CHECK(gcn_layer(Tensor::from_rows({{-1, 3}, {4, -2}}), Tensor::identity(2), Tensor::identity(2)) ==
          Tensor::from_rows({{0, 3}, {4, 0}}));
  }

  TEST_CASE("zero layers and composition") {
    Rng rng(67);
    Tape tape;
    Var h = tape.constant(random_tensor(rng, 4, 3));
    Var a = tape.constant(normalize_adjacency(graph_with_edges(4, {{0, 1}, {1, 2}, {2, 3}})));
    CHECK(gcn_forward(h, a, {}).value() == h.value());
    const std::vector<Var> ws = {tape.constant(random_tensor(rng, 3, 3)),
                                 tape.constant(random_tensor(rng, 3, 3))};
    const Tensor twice = gcn_layer(gcn_layer(h.value(), a.value(), ws[0].value()), a.value(), ws[1].value());
    CHECK(max_abs_diff(gcn_forward(h, a, ws).value(), twice) < 1e-15);

    Config c;
    c.gcn_layers = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.ablation_mode = true;
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("two layers reach a two-hop neighbor") {
    const Tensor a = normalize_adjacency(graph_with_edges(3, {{0, 1}, {1, 2}}));
    const Tensor w = Tensor::identity(2);
    const Tensor h = Tensor::from_rows({{1, 1}, {1, 1}, {1, 1}});
    Tensor bumped = h;
    bumped.at(2, 0) += 1.0;
    auto node0 = [&](const Tensor& x, int layers) {
      Tensor y = x;
      for (int l = 0; l < layers; ++l) y = gcn_layer(y, a, w);
      return std::vector<double>(y.row(0).begin(), y.row(0).end());
    };
    CHECK(node0(h, 1) == node0(bumped, 1));
    CHECK(node0(h, 2) != node0(bumped, 2));
  }

  TEST_CASE("permutation equivariance") {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng.index(8);
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (rng.coin(0.4)) edges.emplace_back(i, j);
        }
      }
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      const Tensor a = normalize_adjacency(graph_with_edges(n, edges));
      const Tensor h = random_tensor(rng, n, 4);
      const Tensor w1 = random_tensor(rng, 4, 4);
      const Tensor w2 = random_tensor(rng, 4, 4);
      const Tensor out = gcn_layer(gcn_layer(h, a, w1), a, w2);
      const Tensor pa = permute_both(a, perm);
      const Tensor pout = gcn_layer(gcn_layer(permute_rows(h, perm), pa, w1), pa, w2);
      CHECK(max_abs_diff(pout, permute_rows(out, perm)) <= 1e-10);
    }
  }

  TEST_CASE("node initialization averages token vectors") {
    Tape tape;
    Var states = tape.constant(Tensor::from_rows({{1, 0}, {0, 1}, {3, 4}}));
    Var proj = tape.constant(Tensor::identity(2));
    const Tensor h = init_node_matrix(states, {{2}, {0, 1}, {}}, proj).value();
    CHECK(h == Tensor::from_rows({{3, 4}, {0.5, 0.5}, {0, 0}}));

    Var scaled = tape.constant(Tensor::from_rows({{2, 0}, {0, -1}}));
    CHECK(init_node_matrix(states, {{2}}, scaled).value() == Tensor::from_rows({{6, -4}}));
  }

  TEST_CASE("figure fixture node matrix has one row per node") {
    const EvidenceSet es = parse_srl_document(
        read_text_file(std::filesystem::path(EVIGRAPH_FIXTURE_DIR) / "fig3.json"));
    ClaimVerifier model{Config{}};
    Rng rng(5);
    model.initialize(rng);
    const PreparedInput input = model.prepare(es);
    Tape tape;
    const EncodedSequence enc = model.encode(tape, input);
    const Var h0 = init_node_matrix(enc.states, input.evidence_groups,
                                    tape.param(model.params().get("node.projection")));
    CHECK(h0.rows() == input.evidence_graph->size());
    CHECK(h0.rows() == 6);
    CHECK(h0.cols() == 100);
  }
}

TEST_SUITE("gat") {
  TEST_CASE("attention examples") {
    Tape tape;
    Var id = tape.constant(Tensor::identity(2));
    Var hc = tape.constant(Tensor::from_rows({{1, 0}}));
    Var he = tape.constant(Tensor::from_rows({{1, 0}, {0, 1}}));
    const Var e = attention_scores(hc, he, id, id);
    CHECK(e.value() == Tensor::from_rows({{1, 0}}));
    const Var alpha = normalize_attention(e);
    CHECK(alpha.value().at(0, 0) == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)).epsilon(1e-12));
    CHECK(alpha.value().at(0, 0) == doctest::Approx(0.7311).epsilon(1e-4));
    CHECK(attention_scores(tape.constant(Tensor::matrix(3, 2)), he, id, id).value() == Tensor::matrix(3, 2));
    CHECK(normalize_attention(tape.constant(Tensor::from_rows({{0, 0}}))).value() ==
          Tensor::from_rows({{0.5, 0.5}}));
    CHECK(normalize_attention(tape.constant(Tensor::from_rows({{4.2}}))).value() ==
          Tensor::from_rows({{1.0}}));
    CHECK_THROWS_AS(attention_scores(hc, tape.constant(Tensor::matrix(0, 2)), id, id), DimensionError);
  }

  TEST_CASE("attention scores match a double loop") {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t nc = 1 + rng.index(4), ne = 1 + rng.index(5), d = 1 + rng.index(4),
                        f = 1 + rng.index(4);
      Tape tape;
      const Tensor hc = random_tensor(rng, nc, d), he = random_tensor(rng, ne, d);
      const Tensor wc = random_tensor(rng, f, d), we = random_tensor(rng, f, d);
      const Tensor got = attention_scores(tape.constant(hc), tape.constant(he), tape.constant(wc),
                                          tape.constant(we)).value();
      for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < ne; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < f; ++k) {
            double q = 0.0, kk = 0.0;
            for (std::size_t m = 0; m < d; ++m) {
              q += wc.at(k, m) * hc.at(i, m);
              kk += we.at(k, m) * he.at(j, m);
            }
            s += q * kk;
          }
          CHECK(got.at(i, j) == doctest::Approx(s).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("claim-centric vectors") {
    Tape tape;
    Var he = tape.constant(Tensor::from_rows({{1, 2}, {3, 4}}));
    CHECK(claim_centric(tape.constant(Tensor::from_rows({{1, 0}})), he).value() ==
          Tensor::from_rows({{1, 2}}));
    Var same = tape.constant(Tensor::from_rows({{5, 6}, {5, 6}, {5, 6}}));
    const Tensor x = claim_centric(tape.constant(Tensor::from_rows({{1.0 / 3, 1.0 / 3, 1.0 / 3}})), same).value();
    CHECK(max_abs_diff(x, Tensor::from_rows({{5, 6}})) < 1e-14);

    Rng rng(79);
    const Tensor alpha = random_tensor(rng, 3, 4, 0.0, 1.0);
    const Tensor e = random_tensor(rng, 4, 5);
    const Tensor got = claim_centric(tape.constant(alpha), tape.constant(e)).value();
    CHECK(max_abs_diff(got, testing::naive_matmul(alpha, e)) < 1e-14);
  }

  TEST_CASE("alignment features") {
    Tape tape;
    Var a = tape.constant(Tensor::from_rows({{1, 2}}));
    CHECK(alignment_features(a, a).value() == Tensor::from_rows({{1, 2, 1, 2, 0, 0, 1, 4}}));
    Var x = tape.constant(Tensor::from_rows({{1, 0}}));
    Var y = tape.constant(Tensor::from_rows({{0, 1}}));
    CHECK(alignment_features(x, y).value() == Tensor::from_rows({{1, 0, 0, 1, 1, -1, 0, 0}}));

    // selector picking the Hadamard slice
    Rng rng(83);
    const std::size_t d = 3;
    Tensor sel = Tensor::matrix(d, 4 * d);
    for (std::size_t i = 0; i < d; ++i) sel.at(i, 3 * d + i) = 1.0;
    const Tensor xv = random_tensor(rng, 2, d), yv = random_tensor(rng, 2, d);
    const Tensor got = align(tape.constant(xv), tape.constant(yv), tape.constant(sel)).value();
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t i = 0; i < d; ++i) CHECK(got.at(r, i) == xv.at(r, i) * yv.at(r, i));
    }
  }

  TEST_CASE("classify") {
    Rng rng(89);
    const std::size_t d = 3, de = 2;
    Tape tape;
    HeadParams head{tape.constant(random_tensor(rng, d + de, 4)), tape.constant(random_tensor(rng, 1, 4)),
                    tape.constant(Tensor::matrix(4, 3)), tape.constant(Tensor::matrix(1, 3))};
    Var aligned = tape.constant(random_tensor(rng, 2, d));
    Var cls = tape.constant(random_tensor(rng, 1, de));
    const Tensor p = softmax(classify(aligned, cls, head).value(), 1);
    for (std::size_t k = 0; k < 3; ++k) CHECK(p[k] == doctest::Approx(1.0 / 3).epsilon(1e-15));

    // a single claim node passes straight into the head
    head.w2 = tape.constant(random_tensor(rng, 4, 3));
    Var one = tape.constant(random_tensor(rng, 1, d));
    Tensor pre = testing::naive_matmul(
        Tensor::from_rows({{one.value()[0], one.value()[1], one.value()[2], cls.value()[0], cls.value()[1]}}),
        head.w1.value());
    for (std::size_t k = 0; k < 4; ++k) pre[k] = std::max(0.0, pre[k] + head.b1.value()[k]);
    Tensor want = testing::naive_matmul(pre, head.w2.value());
    for (std::size_t k = 0; k < 3; ++k) want[k] += head.b2.value()[k];
    CHECK(max_abs_diff(classify(one, cls, head).value(), want) < 1e-14);
  }

  TEST_CASE("evidence permutation invariance") {
    Rng rng(97);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t nc = 1 + rng.index(4), ne = 1 + rng.index(6), d = 2 + rng.index(4), f = 1 + rng.index(4);
      const Tensor hc = random_tensor(rng, nc, d), he = random_tensor(rng, ne, d);
      const Tensor wc = random_tensor(rng, f, d), we = random_tensor(rng, f, d), wa = random_tensor(rng, d, 4 * d);
      const Tensor w1 = random_tensor(rng, d + 2, 5), b1 = random_tensor(rng, 1, 5);
      const Tensor w2 = random_tensor(rng, 5, 3), b2 = random_tensor(rng, 1, 3);
      const Tensor cls = random_tensor(rng, 1, 2);
      std::vector<std::size_t> perm(ne);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      auto run = [&](const Tensor& evidence) {
        Tape tape;
        Var e = tape.constant(evidence);
        Var c = tape.constant(hc);
        Var alpha = normalize_attention(attention_scores(c, e, tape.constant(wc), tape.constant(we)));
        Var aligned = align(c, claim_centric(alpha, e), tape.constant(wa));
        HeadParams head{tape.constant(w1), tape.constant(b1), tape.constant(w2), tape.constant(b2)};
        return classify(aligned, tape.constant(cls), head).value();
      };
      CHECK(max_abs_diff(run(he), run(permute_rows(he, perm))) <= 1e-10);
    }
  }
}
