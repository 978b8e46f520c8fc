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

#include <bit>

#include "icscm/simd/kernels.hpp"

namespace icscm::simd {
namespace {

std::uint64_t popcount_scalar(const Word* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::uint64_t and_popcount_scalar(const Word* a, const Word* b,
                                  std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void and_popcount_multi_scalar(const Word* col, const Word* const* masks,
                               std::size_t n_masks, std::size_t n,
                               std::uint64_t* out) {
  for (std::size_t j = 0; j < n_masks; ++j) out[j] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Word c = col[i];
    for (std::size_t j = 0; j < n_masks; ++j) {
      out[j] += std::popcount(c & masks[j][i]);
    }
  }
}

void and_into_scalar(Word* out, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void andnot_into_scalar(Word* out, const Word* a, const Word* b,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",          popcount_scalar,  and_popcount_scalar,
      and_popcount_multi_scalar, and_into_scalar, andnot_into_scalar,
  };
  return table;
}

}  // namespace icscm::simd
