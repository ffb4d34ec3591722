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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "evigraph/kernels.h"
#include "kernels_internal.h"

namespace evigraph::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* find(std::string_view name) {
  for (const KernelTable* t : available_tables()) {
    if (name == t->name) return t;
  }
  return nullptr;
}

const KernelTable* initial_table() {
  const char* env = std::getenv("EVIGRAPH_KERNELS");
  std::string_view want = env ? env : "auto";
  if (want != "auto") {
    if (const KernelTable* t = find(want)) return t;
  }
  return available_tables().back();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() {
  return cpu_has_avx2() ? internal::avx2_compiled() : nullptr;
}

const KernelTable* neon_table() { return internal::neon_compiled(); }

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (const KernelTable* t = avx2_table()) out.push_back(t);
  if (const KernelTable* t = neon_table()) out.push_back(t);
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(std::string_view name) {
  const KernelTable* t = name == "auto" ? available_tables().back() : find(name);
  if (t == nullptr) {
    throw std::invalid_argument("kernel variant unavailable: " + std::string(name));
  }
  current().store(t, std::memory_order_relaxed);
}

void gemm_nn(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q) {
  const KernelTable& k = active();
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c + i * q;
    const double* ai = a + i * p;
    for (std::size_t l = 0; l < p; ++l) {
      if (ai[l] != 0.0) k.axpy(ai[l], b + l * q, ci, q);
    }
  }
}

void gemm_nt(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q) {
  const KernelTable& k = active();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a + i * p;
    double* ci = c + i * q;
    for (std::size_t j = 0; j < q; ++j) ci[j] += k.dot(ai, b + j * p, p);
  }
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t n,
             std::size_t p, std::size_t q) {
  const KernelTable& k = active();
  for (std::size_t r = 0; r < n; ++r) {
    const double* ar = a + r * p;
    const double* br = b + r * q;
    for (std::size_t i = 0; i < p; ++i) {
      if (ar[i] != 0.0) k.axpy(ar[i], br, c + i * q, q);
    }
  }
}

}  // namespace evigraph::kernels
