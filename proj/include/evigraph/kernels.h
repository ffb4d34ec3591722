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

#ifndef EVIGRAPH_KERNELS_H_
#define EVIGRAPH_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace evigraph::kernels {

// Inner-loop primitives over contiguous float64 runs. Every variant must
// agree with the scalar reference up to summation-order rounding.
struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = max(x, 0)
  void (*relu)(const double* x, double* y, std::size_t n);
  // y *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
};

const KernelTable& scalar_table();

// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

// The table used by the free functions below. Chosen once from
// EVIGRAPH_KERNELS (scalar|avx2|neon|auto); auto picks the widest available.
const KernelTable& active();

// Overrides the active table. Throws std::invalid_argument for an unknown or
// unavailable name.
void select(std::string_view name);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

// Dense row-major products accumulated into c.
//   gemm_nn: c[n x q] += a[n x p] * b[p x q]
//   gemm_nt: c[n x q] += a[n x p] * b[q x p]^T
//   gemm_tn: c[p x q] += a[n x p]^T * b[n x q]
void gemm_nn(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q);
void gemm_nt(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q);
void gemm_tn(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q);

}  // namespace evigraph::kernels

#endif  // EVIGRAPH_KERNELS_H_
