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

#ifndef EVIGRAPH_GRADIENT_CHECK_H_
#define EVIGRAPH_GRADIENT_CHECK_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "evigraph/autodiff.h"

namespace evigraph {

struct GradientCheckResult {
  // max over coordinates of |g_a - g_fd| / max(1, |g_a|, |g_fd|)
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  std::size_t coordinates = 0;
};

// Compares reverse-mode gradients of a scalar function against central finite
// differences. f must rebuild its graph on the tape it is handed, reading the
// current values of params. Throws Error naming the parameter when a
// perturbed evaluation is not finite. Parameter gradients are left holding the
// analytic result.
GradientCheckResult gradient_check(const std::function<Var(Tape&)>& f,
                                   std::span<Parameter* const> params,
                                   double step = 1e-6);

}  // namespace evigraph

#endif  // EVIGRAPH_GRADIENT_CHECK_H_
