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

#include "icscm/coverage.hpp"

#include "icscm/simd/kernels.hpp"

namespace icscm {

CoverageScanner::CoverageScanner(const Dataset& data)
    : data_(data), n_envs_(data.n_envs()), ones_(data.n_features()) {}

void CoverageScanner::reset(const BitVector& negatives,
                            const BitVector& positives) {
  masks_.clear();
  mask_totals_.clear();
  for (const BitVector* set : {&negatives, &positives}) {
    for (std::size_t e = 0; e < n_envs_; ++e) {
      masks_.push_back(*set & data_.env_mask(static_cast<EnvId>(e)));
      mask_totals_.push_back(masks_.back().count());
    }
  }
  mask_ptrs_.clear();
  for (const BitVector& m : masks_) mask_ptrs_.push_back(m.words().data());
  for (auto& v : ones_) v.clear();
}

const std::vector<std::uint64_t>& CoverageScanner::ones_for(
    FeatureIndex feature) {
  auto& out = ones_[feature];
  if (out.empty()) {
    out.resize(masks_.size());
    const BitVector& col = data_.column_bits(feature);
    simd::active_kernels().and_popcount_multi(
        col.words().data(), mask_ptrs_.data(), mask_ptrs_.size(),
        col.word_count(), out.data());
  }
  return out;
}

stats::ContingencyTable CoverageScanner::leaf_table(const Rule& rule) {
  const auto& ones = ones_for(rule.feature);
  stats::ContingencyTable table(2, n_envs_);
  for (std::size_t idx = 0; idx < masks_.size(); ++idx) {
    // The rule is 0 where the column differs from its expected value.
    const std::uint64_t n =
        rule.expected_value == 1 ? mask_totals_[idx] - ones[idx] : ones[idx];
    table.add(idx / n_envs_, idx % n_envs_, n);
  }
  return table;
}

stats::ContingencyTable CoverageScanner::remaining_table() const {
  stats::ContingencyTable table(2, n_envs_);
  for (std::size_t idx = 0; idx < masks_.size(); ++idx) {
    table.add(idx / n_envs_, idx % n_envs_, mask_totals_[idx]);
  }
  return table;
}

std::size_t CoverageScanner::remaining_negatives() const {
  std::size_t n = 0;
  for (std::size_t e = 0; e < n_envs_; ++e) n += mask_totals_[e];
  return n;
}

std::size_t CoverageScanner::remaining_positives() const {
  std::size_t n = 0;
  for (std::size_t e = 0; e < n_envs_; ++e) n += mask_totals_[n_envs_ + e];
  return n;
}

}  // namespace icscm
