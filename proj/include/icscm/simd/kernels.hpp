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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace icscm::simd {

using Word = std::uint64_t;

// Bit-parallel kernels over packed 64-bit words. Every variant must produce
// results identical to the scalar reference; only throughput differs.
struct KernelTable {
  std::string_view name;

  // Number of set bits in a[0..n).
  std::uint64_t (*popcount)(const Word* a, std::size_t n);

  // Number of set bits in (a & b)[0..n).
  std::uint64_t (*and_popcount)(const Word* a, const Word* b, std::size_t n);

  // out[j] = popcount(col & masks[j]) for every mask. Reads col once per
  // block, which is what the candidate-rule scan spends its time on.
  void (*and_popcount_multi)(const Word* col, const Word* const* masks,
                             std::size_t n_masks, std::size_t n,
                             std::uint64_t* out);

  // out = a & b
  void (*and_into)(Word* out, const Word* a, const Word* b, std::size_t n);

  // out = a & ~b
  void (*andnot_into)(Word* out, const Word* a, const Word* b, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// The table used by the library. Picked once on first use: the widest
// supported variant, unless ICSCM_SIMD=scalar is set in the environment.
const KernelTable& active_kernels();

// Overrides the active table (tests and benchmarks). Not thread-safe with
// concurrent kernel users.
void set_active_kernels(const KernelTable& table);

}  // namespace icscm::simd
