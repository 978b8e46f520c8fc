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
#include <vector>

namespace icscm {

// Fixed-length packed bit set. Bits past size() in the last word are always
// zero so that word-wise popcounts never see garbage.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t n_bits, bool value = false);

  static BitVector from_bytes(std::span<const std::uint8_t> values);

  std::size_t size() const { return n_bits_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }
  std::span<Word> mutable_words() { return words_; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool value = true) {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }

  std::size_t count() const;
  bool none() const { return count() == 0; }

  // Element-wise operations; operands must have equal size.
  BitVector operator&(const BitVector& other) const;
  BitVector operator|(const BitVector& other) const;
  BitVector and_not(const BitVector& other) const;  // *this & ~other
  BitVector operator~() const;
  BitVector& operator&=(const BitVector& other);

  std::size_t and_count(const BitVector& other) const;

  bool operator==(const BitVector& other) const = default;

 private:
  void clear_tail();

  std::size_t n_bits_ = 0;
  std::vector<Word> words_;
};

}  // namespace icscm
