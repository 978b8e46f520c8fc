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

#include <arm_neon.h>

#include <algorithm>
#include <bit>

#include "icscm/simd/kernels.hpp"

namespace icscm::simd {
namespace {

constexpr std::size_t kWordsPerVector = 2;
constexpr std::size_t kMaskChunk = 16;

inline std::uint64_t popcount_u64x2(uint64x2_t v) {
  return vaddlvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
}

std::uint64_t popcount_neon(const Word* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    total += popcount_u64x2(vld1q_u64(a + i));
  }
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_popcount_neon(const Word* a, const Word* b, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    total += popcount_u64x2(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void and_popcount_multi_neon(const Word* col, const Word* const* masks,
                             std::size_t n_masks, std::size_t n,
                             std::uint64_t* out) {
  for (std::size_t first = 0; first < n_masks; first += kMaskChunk) {
    const std::size_t count = std::min(kMaskChunk, n_masks - first);
    std::uint64_t acc[kMaskChunk] = {};
    std::size_t i = 0;
    for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
      const uint64x2_t c = vld1q_u64(col + i);
      for (std::size_t j = 0; j < count; ++j) {
        acc[j] += popcount_u64x2(vandq_u64(c, vld1q_u64(masks[first + j] + i)));
      }
    }
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t t = i; t < n; ++t) {
        acc[j] += std::popcount(col[t] & masks[first + j][t]);
      }
      out[first + j] = acc[j];
    }
  }
}

void and_into_neon(Word* out, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    vst1q_u64(out + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void andnot_into_neon(Word* out, const Word* a, const Word* b,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    // vbicq(x, y) computes x & ~y.
    vst1q_u64(out + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& neon_kernel_table() {
  static const KernelTable table{
      "neon",          popcount_neon,  and_popcount_neon,
      and_popcount_multi_neon, and_into_neon, andnot_into_neon,
  };
  return table;
}

}  // namespace icscm::simd
