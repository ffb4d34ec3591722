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

#include "evigraph/optimizer.h"

#include <cmath>

namespace evigraph {

void AdamW::step(ParameterStore& params) {
  ++step_;
  const double lr = options_.learning_rate;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (Parameter* p : params.all()) {
    if (!p->trainable) continue;
    auto [it, fresh] = state_.try_emplace(p->name());
    Moments& s = it->second;
    if (fresh) {
      s.m = Tensor(p->value().shape(), 0.0);
      s.v = Tensor(p->value().shape(), 0.0);
    }
    Tensor& w = p->value();
    const Tensor& g = p->grad();
    for (std::size_t i = 0; i < w.size(); ++i) {
      s.m[i] = b1 * s.m[i] + (1.0 - b1) * g[i];
      s.v[i] = b2 * s.v[i] + (1.0 - b2) * g[i] * g[i];
      const double mhat = s.m[i] / c1;
      const double vhat = s.v[i] / c2;
      w[i] -= lr * options_.weight_decay * w[i];
      w[i] -= lr * mhat / (std::sqrt(vhat) + options_.epsilon);
    }
  }
}

void init_uniform(ParameterStore& params, Rng& rng, double scale) {
  for (Parameter* p : params.all()) {
    for (double& v : p->value().data()) v = rng.uniform(-scale, scale);
  }
}

}  // namespace evigraph
