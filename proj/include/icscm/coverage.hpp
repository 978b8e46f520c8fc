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
#include <vector>

#include "icscm/bitvector.hpp"
#include "icscm/data_model.hpp"
#include "icscm/stats.hpp"

namespace icscm {

// Counts, per label and environment, the still-undecided samples that land in
// a rule's negative leaf (the rule evaluates to 0 there). Row 0 of the leaf
// table holds negatives (the rule covers them), row 1 positives (the rule
// misclassifies them).
class CoverageScanner {
 public:
  explicit CoverageScanner(const Dataset& data);

  // Sets the remaining negative and positive samples and clears cached
  // per-feature counts.
  void reset(const BitVector& negatives, const BitVector& positives);

  stats::ContingencyTable leaf_table(const Rule& rule);

  // Table of all remaining samples (the positive leaf of the current model).
  stats::ContingencyTable remaining_table() const;

  std::size_t remaining_negatives() const;
  std::size_t remaining_positives() const;

 private:
  const std::vector<std::uint64_t>& ones_for(FeatureIndex feature);

  const Dataset& data_;
  std::size_t n_envs_;
  // [neg & env_0, ..., neg & env_{k-1}, pos & env_0, ..., pos & env_{k-1}]
  std::vector<BitVector> masks_;
  std::vector<std::uint64_t> mask_totals_;
  // Per feature: popcount(column & mask) for every mask; empty until used.
  std::vector<std::vector<std::uint64_t>> ones_;
  std::vector<const BitVector::Word*> mask_ptrs_;
};

}  // namespace icscm
