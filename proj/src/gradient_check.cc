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

#include "evigraph/gradient_check.h"

#include <algorithm>
#include <cmath>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

double evaluate(const std::function<Var(Tape&)>& f) {
  Tape tape;
  return f(tape).value()[0];
}

}  // namespace

GradientCheckResult gradient_check(const std::function<Var(Tape&)>& f,
                                   std::span<Parameter* const> params, double step) {
  for (Parameter* p : params) {
    if (!p->value().all_finite()) {
      throw Error("gradient_check: parameter " + p->name() + " holds non-finite values");
    }
    p->zero_grad();
  }
  {
    Tape tape;
    Var loss = f(tape);
    if (!std::isfinite(loss.value()[0])) throw Error("gradient_check: loss is not finite");
    tape.backward(loss);
  }
  for (Parameter* p : params) {
    if (!p->grad().all_finite()) {
      throw Error("gradient_check: non-finite gradient for " + p->name());
    }
  }

  GradientCheckResult result;
  for (Parameter* p : params) {
    Tensor& w = p->value();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double saved = w[i];
      w[i] = saved + step;
      const double up = evaluate(f);
      w[i] = saved - step;
      const double down = evaluate(f);
      w[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw Error("gradient_check: non-finite value while perturbing " + p->name() +
                    "[" + std::to_string(i) + "]");
      }
      const double numeric = (up - down) / (2.0 * step);
      const double analytic = p->grad()[i];
      const double denom = std::max({1.0, std::abs(analytic), std::abs(numeric)});
      const double err = std::abs(analytic - numeric) / denom;
      ++result.coordinates;
      if (result.worst_parameter.empty() || err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_parameter = p->name();
        result.worst_index = i;
      }
    }
  }
  return result;
}

}  // namespace evigraph
