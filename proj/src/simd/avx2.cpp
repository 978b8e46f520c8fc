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

// Compiled with -mavx2; only reached after a runtime CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "icscm/simd/kernels.hpp"

namespace icscm::simd {
namespace {

constexpr std::size_t kWordsPerVector = 4;
constexpr std::size_t kMaskChunk = 16;

// Per-byte popcount through a nibble lookup table (vpshufb), then horizontal
// byte sums into four 64-bit lanes (vpsadbw).
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                         _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline __m256i load(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

std::uint64_t popcount_avx2(const Word* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_popcount_avx2(const Word* a, const Word* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    const __m256i v = _mm256_and_si256(load(a + i), load(b + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(v));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void and_popcount_multi_avx2(const Word* col, const Word* const* masks,
                             std::size_t n_masks, std::size_t n,
                             std::uint64_t* out) {
  for (std::size_t first = 0; first < n_masks; first += kMaskChunk) {
    const std::size_t count = std::min(kMaskChunk, n_masks - first);
    __m256i acc[kMaskChunk];
    for (std::size_t j = 0; j < count; ++j) acc[j] = _mm256_setzero_si256();

    std::size_t i = 0;
    for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
      const __m256i c = load(col + i);
      for (std::size_t j = 0; j < count; ++j) {
        const __m256i v = _mm256_and_si256(c, load(masks[first + j] + i));
        acc[j] = _mm256_add_epi64(acc[j], popcount_lanes(v));
      }
    }
    for (std::size_t j = 0; j < count; ++j) {
      std::uint64_t total = horizontal_sum(acc[j]);
      for (std::size_t t = i; t < n; ++t) {
        total += std::popcount(col[t] & masks[first + j][t]);
      }
      out[first + j] = total;
    }
  }
}

void and_into_avx2(Word* out, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_and_si256(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void andnot_into_avx2(Word* out, const Word* a, const Word* b,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + kWordsPerVector <= n; i += kWordsPerVector) {
    // _mm256_andnot_si256(x, y) computes ~x & y.
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_andnot_si256(load(b + i), load(a + i)));
  }
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{
      "avx2",          popcount_avx2,  and_popcount_avx2,
      and_popcount_multi_avx2, and_into_avx2, andnot_into_avx2,
  };
  return table;
}

}  // namespace icscm::simd
