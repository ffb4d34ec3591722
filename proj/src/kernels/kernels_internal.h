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

#ifndef EVIGRAPH_SRC_KERNELS_KERNELS_INTERNAL_H_
#define EVIGRAPH_SRC_KERNELS_KERNELS_INTERNAL_H_

#include "evigraph/kernels.h"

namespace evigraph::kernels::internal {

// Defined in the per-ISA translation units. Each returns null if the variant
// is not compiled for this target.
const KernelTable* avx2_compiled();
const KernelTable* neon_compiled();

}  // namespace evigraph::kernels::internal

#endif  // EVIGRAPH_SRC_KERNELS_KERNELS_INTERNAL_H_
