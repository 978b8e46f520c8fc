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
#include <optional>
#include <vector>

#include "icscm/data_model.hpp"
#include "icscm/stats.hpp"

namespace icscm {

// Largest feature count enumerated without a subset-size cap (2^20 tests).
inline constexpr std::size_t kMaxEnumerableFeatures = 20;
// Largest number of conditional tests accepted with a cap.
inline constexpr std::uint64_t kMaxIcpTests = std::uint64_t{1} << 20;

struct IcpConfig {
  double alpha = 0.05;
  // Only subsets of at most this many features are tested.
  std::optional<std::size_t> max_subset_size;
  // Conditional G-test dof convention; all-strata matches the `gsq` package.
  stats::DofRule dof_rule = stats::DofRule::kAllStrata;

  void validate() const;  // throws ConfigError
};

struct SubsetTest {
  std::vector<FeatureIndex> subset;  // sorted
  double p_value = 1.0;
  bool accepted = false;  // p_value > alpha
};

struct IcpResult {
  // Intersection of all accepted subsets; empty when none was accepted.
  std::vector<FeatureIndex> parents;
  // Ordered by subset size, then lexicographically.
  std::vector<SubsetTest> tests;
  std::size_t accepted_count = 0;
};

// Number of conditional tests icp_fit runs for d features.
std::uint64_t icp_test_count(std::size_t n_features,
                             std::optional<std::size_t> max_subset_size);

// Throws InfeasibleError when icp_fit would refuse this problem size.
void check_icp_feasible(std::size_t n_features,
                        std::optional<std::size_t> max_subset_size);

// Non-linear invariant causal prediction: accepts every feature subset S with
// Y _||_ E | S under the conditional G-test and intersects the accepted sets.
// Throws ConfigError for single-environment data and InfeasibleError when the
// enumeration is too large.
IcpResult icp_fit(const Dataset& data, const IcpConfig& config);

}  // namespace icscm
