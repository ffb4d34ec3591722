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

#include "evigraph/autodiff.h"
#include "evigraph/errors.h"
#include "evigraph/gradient_check.h"
#include "evigraph/optimizer.h"
#include "gradient_suite.h"
#include "oracles.h"

using namespace evigraph;
using evigraph::testing::naive_matmul;
using evigraph::testing::random_tensor;

TEST_SUITE("tensor") {
  TEST_CASE("shape and value count must agree") {
    CHECK_THROWS_AS(Tensor({2, 2}, std::vector<double>{1, 2, 3}), DimensionError);
    const Tensor t({2, 3}, std::vector<double>{1, 2, 3, 4, 5, 6});
    CHECK(t.rows() == 2);
    CHECK(t.cols() == 3);
    CHECK(t.at(1, 0) == 4);
    CHECK(t.row(1)[2] == 6);
    CHECK(t.shape_string() == "[2x3]");
  }

  TEST_CASE("rank-1 tensors act as one row") {
    const Tensor v = Tensor::vector(4, 1.5);
    CHECK(v.rows() == 1);
    CHECK(v.cols() == 4);
  }

  TEST_CASE("identity and from_rows") {
    CHECK(Tensor::identity(2) == Tensor::from_rows({{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(Tensor::from_rows({{1, 2}, {3}}), DimensionError);
  }

  TEST_CASE("all_finite flags nan and inf") {
    Tensor t = Tensor::matrix(1, 2);
    CHECK(t.all_finite());
    t[1] = NAN;
    CHECK_FALSE(t.all_finite());
  }
}

TEST_SUITE("ops") {
  TEST_CASE("linear examples") {
    Tape t;
    CHECK(ops::linear(t.constant(Tensor::from_rows({{1, 2}})), t.constant(Tensor::identity(2)))
              .value() == Tensor::from_rows({{1, 2}}));
    CHECK(ops::linear(t.constant(Tensor::identity(2)), t.constant(Tensor::from_rows({{2, 0}, {0, 3}})))
              .value() == Tensor::from_rows({{2, 0}, {0, 3}}));
    Rng rng(3);
    const Tensor x = random_tensor(rng, 3, 4), w = random_tensor(rng, 4, 2);
    CHECK(max_abs_diff(ops::linear(t.constant(x), t.constant(w)).value(), naive_matmul(x, w)) < 1e-14);
  }

  TEST_CASE("linear reports both shapes on mismatch") {
    Tape t;
    try {
      ops::linear(t.constant(Tensor::matrix(2, 3)), t.constant(Tensor::matrix(2, 3)));
      FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("[2x3]") != std::string::npos);
    }
  }

  TEST_CASE("softmax examples") {
    const Tensor u = softmax(Tensor::from_rows({{0, 0}}), 1);
    CHECK(u[0] == doctest::Approx(0.5).epsilon(1e-15));
    const Tensor s = softmax(Tensor::from_rows({{1, 0}}), 1);
    const double e = std::exp(1.0);
    CHECK(std::abs(s[0] - e / (e + 1)) < 1e-15);
    CHECK(std::abs(s[1] - 1 / (e + 1)) < 1e-15);
    const Tensor big = softmax(Tensor::from_rows({{5.0, 1005.0}}), 1);
    CHECK(big.all_finite());
    CHECK(big[1] == doctest::Approx(1.0));
    CHECK(big[0] < 1e-300);
  }

  TEST_CASE("softmax rows sum to one and ignore shifts") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng.index(6), m = 1 + rng.index(6);
      const Tensor x = random_tensor(rng, n, m, -20, 20);
      Tensor shifted = x;
      const double c = rng.uniform(-100, 100);
      for (double& v : shifted.data()) v += c;
      const Tensor a = softmax(x, 1), b = softmax(shifted, 1);
      for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (double v : a.row(r)) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-12);
      }
      CHECK(max_abs_diff(a, b) < 1e-12);
    }
  }

  TEST_CASE("softmax along axis 0 normalizes columns") {
    const Tensor s = softmax(Tensor::from_rows({{1, 5}, {1, 5}}), 0);
    CHECK(s == Tensor::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
  }

  TEST_CASE("cross entropy examples") {
    Tape t;
    for (std::size_t g = 0; g < 3; ++g) {
      CHECK(std::abs(ops::cross_entropy(t.constant(Tensor::matrix(1, 3)), g).value()[0] - std::log(3.0)) <
            1e-15);
    }
    CHECK(ops::cross_entropy(t.constant(Tensor::from_rows({{10, -10, -10}})), 0).value()[0] < 1e-8);
    CHECK_THROWS_AS(ops::cross_entropy(t.constant(Tensor::matrix(1, 3)), 3), std::out_of_range);

    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const Tensor z = random_tensor(rng, 1, 3, -5, 5);
      const std::size_t g = rng.index(3);
      const double want = -std::log(std::exp(z[g]) / (std::exp(z[0]) + std::exp(z[1]) + std::exp(z[2])));
      CHECK(std::abs(ops::cross_entropy(t.constant(z), g).value()[0] - want) < 1e-12);
    }
  }

  TEST_CASE("mean pooling examples") {
    Tape t;
    CHECK(ops::mean_rows(t.constant(Tensor::from_rows({{1, 2, 3}}))).value() ==
          Tensor::from_rows({{1, 2, 3}}));
    CHECK(ops::mean_rows(t.constant(Tensor::identity(2))).value() == Tensor::from_rows({{0.5, 0.5}}));
    CHECK_THROWS_AS(ops::mean_rows(t.constant(Tensor::matrix(0, 3))), DimensionError);
    Rng rng(2);
    const Tensor x = random_tensor(rng, 5, 3);
    const Tensor m = ops::mean_rows(t.constant(x)).value();
    for (std::size_t c = 0; c < 3; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < 5; ++r) s += x.at(r, c);
      CHECK(std::abs(m[c] - s / 5.0) < 1e-15);
    }
  }

  TEST_CASE("relu is exact") {
    Rng rng(6);
    const Tensor x = random_tensor(rng, 4, 4);
    const Tensor y = relu(x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == (x[i] >= 0 ? x[i] : 0.0));
  }
}

TEST_SUITE("autodiff") {
  TEST_CASE("square at one has derivative two") {
    Parameter x("x", Tensor::from_rows({{1.0}}));
    Parameter* ps[] = {&x};
    const auto r = gradient_check([&](Tape& t) { return ops::mul(t.param(x), t.param(x)); }, ps);
    CHECK(std::abs(x.grad()[0] - 2.0) < 1e-8);
    CHECK(r.max_relative_error < 1e-8);
  }

  TEST_CASE("unused parameter gets an exactly zero gradient") {
    Rng rng(1);
    Parameter w("W", random_tensor(rng, 3, 2));
    Parameter unused("unused", random_tensor(rng, 2, 2));
    Parameter* ps[] = {&w, &unused};
    const Tensor x = random_tensor(rng, 1, 3);
    const auto r = gradient_check(
        [&](Tape& t) { return ops::cross_entropy(ops::linear(t.constant(x), t.param(w)), 1); }, ps);
    CHECK(r.max_relative_error < 1e-5);
    for (double g : unused.grad().data()) CHECK(g == 0.0);
  }

  TEST_CASE("non-finite values name the parameter") {
    Parameter bad("bad_param", Tensor::from_rows({{NAN}}));
    Parameter* ps[] = {&bad};
    try {
      gradient_check([&](Tape& t) { return ops::sum_all(t.param(bad)); }, ps);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("bad_param") != std::string::npos);
    }
  }

  TEST_CASE("frozen parameters receive no gradient") {
    Parameter w("W", Tensor::from_rows({{2.0}}));
    w.trainable = false;
    Tape t;
    Var y = ops::mul(t.param(w), t.param(w));
    t.backward(y);
    CHECK(w.grad()[0] == 0.0);
  }

  TEST_CASE("gradients accumulate across backward passes") {
    Parameter w("W", Tensor::from_rows({{3.0}}));
    for (int i = 0; i < 2; ++i) {
      Tape t;
      t.backward(ops::scale(t.param(w), 2.0));
    }
    CHECK(w.grad()[0] == 4.0);
  }

  TEST_CASE("every op passes finite differences") {
    for (const auto& r : evigraph::testing::run_gradient_suite(5, 99)) {
      CAPTURE(r.op);
      CAPTURE(r.worst_parameter);
      CHECK(r.instances == 5);
      CHECK(r.max_error <= 1e-5);
    }
  }
}

TEST_SUITE("optimizer") {
  TEST_CASE("one AdamW step matches the closed form") {
    ParameterStore store;
    Parameter& p = store.add("w", Tensor::from_rows({{1.0, -2.0}}));
    p.grad() = Tensor::from_rows({{0.5, -0.25}});
    AdamWOptions o;
    o.learning_rate = 0.1;
    o.weight_decay = 0.01;
    AdamW opt(o);
    opt.step(store);
    // First step: m_hat = g, v_hat = g^2, so the update is lr * g / (|g| + eps).
    for (std::size_t i = 0; i < 2; ++i) {
      const double w0 = i == 0 ? 1.0 : -2.0, g = i == 0 ? 0.5 : -0.25;
      const double want = w0 - 0.1 * 0.01 * w0 - 0.1 * g / (std::abs(g) + 1e-8);
      CHECK(std::abs(p.value()[i] - want) < 1e-12);
    }
  }

  TEST_CASE("zero learning rate leaves parameters untouched") {
    ParameterStore store;
    Parameter& p = store.add("w", Tensor::from_rows({{0.3, 0.7}}));
    p.grad() = Tensor::from_rows({{1.0, 1.0}});
    AdamWOptions o;
    o.learning_rate = 0.0;
    AdamW opt(o);
    for (int i = 0; i < 3; ++i) opt.step(store);
    CHECK(p.value() == Tensor::from_rows({{0.3, 0.7}}));
  }

  TEST_CASE("frozen parameters are skipped") {
    ParameterStore store;
    Parameter& p = store.add("w", Tensor::from_rows({{1.0}}));
    p.grad() = Tensor::from_rows({{1.0}});
    p.trainable = false;
    AdamW opt(AdamWOptions{});
    opt.step(store);
    CHECK(p.value()[0] == 1.0);
  }

  TEST_CASE("uniform init stays in range and is seed-deterministic") {
    ParameterStore a, b;
    a.add("x", Tensor::matrix(10, 10));
    b.add("x", Tensor::matrix(10, 10));
    Rng r1(9), r2(9);
    init_uniform(a, r1, 0.08);
    init_uniform(b, r2, 0.08);
    CHECK(a.get("x").value() == b.get("x").value());
    for (double v : a.get("x").value().data()) CHECK(std::abs(v) <= 0.08);
  }
}
