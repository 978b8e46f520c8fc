// Copyright 2026 The ICSCM Authors
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
#include <string_view>

#include "icscm/simd/kernels.hpp"

namespace icscm::simd {

#if defined(ICSCM_BUILD_AVX2)
const KernelTable& avx2_kernel_table();
#endif
#if defined(ICSCM_BUILD_NEON)
const KernelTable& neon_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(ICSCM_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(ICSCM_BUILD_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &neon_kernel_table();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* select_kernels() {
  const char* forced = std::getenv("ICSCM_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return t;
  if (const KernelTable* t = neon_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{select_kernels()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() {
  return *active_slot().load(std::memory_order_acquire);
}

void set_active_kernels(const KernelTable& table) {
  active_slot().store(&table, std::memory_order_release);
}

}  // namespace icscm::simd
