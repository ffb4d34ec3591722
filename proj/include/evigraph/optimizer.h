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

#ifndef EVIGRAPH_OPTIMIZER_H_
#define EVIGRAPH_OPTIMIZER_H_

#include <cstddef>
#include <map>
#include <string>

#include "evigraph/autodiff.h"
#include "evigraph/random.h"

namespace evigraph {

struct AdamWOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

// AdamW with decoupled weight decay and bias-corrected moments. Only
// trainable parameters are touched; gradients are consumed as-is.
class AdamW {
 public:
  explicit AdamW(AdamWOptions options) : options_(options) {}

  void step(ParameterStore& params);
  std::size_t steps() const { return step_; }
  const AdamWOptions& options() const { return options_; }

 private:
  struct Moments {
    Tensor m;
    Tensor v;
  };
  AdamWOptions options_;
  std::map<std::string, Moments> state_;
  std::size_t step_ = 0;
};

// Fills every parameter with uniform(-scale, scale) draws, in name order.
void init_uniform(ParameterStore& params, Rng& rng, double scale = 0.08);

}  // namespace evigraph

#endif  // EVIGRAPH_OPTIMIZER_H_
