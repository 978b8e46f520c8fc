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

#include "icscm/bitvector.hpp"

#include "icscm/errors.hpp"
#include "icscm/simd/kernels.hpp"

namespace icscm {
namespace {

void check_same_size(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw InputError("bit vector size mismatch");
  }
}

}  // namespace

BitVector::BitVector(std::size_t n_bits, bool value)
    : n_bits_(n_bits),
      words_((n_bits + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
  clear_tail();
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> values) {
  BitVector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0) out.words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return out;
}

std::size_t BitVector::count() const {
  return simd::active_kernels().popcount(words_.data(), words_.size());
}

BitVector BitVector::operator&(const BitVector& other) const {
  check_same_size(*this, other);
  BitVector out(n_bits_);
  simd::active_kernels().and_into(out.words_.data(), words_.data(),
                                  other.words_.data(), words_.size());
  return out;
}

BitVector BitVector::operator|(const BitVector& other) const {
  check_same_size(*this, other);
  BitVector out(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] |= other.words_[i];
  }
  return out;
}

BitVector BitVector::and_not(const BitVector& other) const {
  check_same_size(*this, other);
  BitVector out(n_bits_);
  simd::active_kernels().andnot_into(out.words_.data(), words_.data(),
                                     other.words_.data(), words_.size());
  return out;
}

BitVector BitVector::operator~() const {
  BitVector out(*this);
  for (Word& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  check_same_size(*this, other);
  simd::active_kernels().and_into(words_.data(), words_.data(),
                                  other.words_.data(), words_.size());
  return *this;
}

std::size_t BitVector::and_count(const BitVector& other) const {
  check_same_size(*this, other);
  return simd::active_kernels().and_popcount(words_.data(),
                                             other.words_.data(),
                                             words_.size());
}

void BitVector::clear_tail() {
  const std::size_t rem = n_bits_ % kWordBits;
  if (rem != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << rem) - 1;
  }
}

}  // namespace icscm
