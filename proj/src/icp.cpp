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

#include "icscm/icp.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "icscm/errors.hpp"
#include "icscm/stats.hpp"

namespace icscm {
namespace {

using SubsetMask = std::uint64_t;

// Depth-first enumeration of feature subsets. Stratum ids of a subset are
// derived from its parent's in one pass (id' = 2 * id + x_j), so each test
// costs O(m) regardless of subset size.
class SubsetSearch {
 public:
  SubsetSearch(const Dataset& data, std::size_t max_size, stats::DofRule rule)
      : data_(data),
        rule_(rule),
        n_envs_(data.n_envs()),
        max_size_(max_size),
        ids_(max_size + 1, std::vector<std::uint32_t>(data.n_samples(), 0)),
        cell_(data.n_samples()) {
    const auto y = data.labels();
    const auto e = data.envs();
    for (std::size_t i = 0; i < cell_.size(); ++i) {
      cell_[i] = static_cast<std::uint32_t>(y[i] * n_envs_ + e[i]);
    }
  }

  void run() { visit(0, 0, 0); }

  const std::vector<std::pair<SubsetMask, double>>& results() const {
    return results_;
  }

 private:
  void visit(std::size_t depth, std::size_t next, SubsetMask mask) {
    results_.emplace_back(mask, test(depth));
    if (depth == max_size_) return;
    const auto& cur = ids_[depth];
    auto& child = ids_[depth + 1];
    for (std::size_t j = next; j < data_.n_features(); ++j) {
      const auto col = data_.column(j);
      for (std::size_t i = 0; i < child.size(); ++i) {
        child[i] = 2 * cur[i] + col[i];
      }
      visit(depth + 1, j + 1, mask | (SubsetMask{1} << j));
    }
  }

  double test(std::size_t depth) {
    const std::size_t width = 2 * n_envs_;
    stats::StratifiedCounts counts(std::size_t{1} << depth, 2, n_envs_);
    auto flat = counts.mutable_counts();
    const auto& ids = ids_[depth];
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++flat[ids[i] * width + cell_[i]];
    }
    return stats::stratified_gtest(counts, rule_).p_value;
  }

  const Dataset& data_;
  stats::DofRule rule_;
  std::size_t n_envs_;
  std::size_t max_size_;
  std::vector<std::vector<std::uint32_t>> ids_;
  std::vector<std::uint32_t> cell_;  // y * k + e per sample
  std::vector<std::pair<SubsetMask, double>> results_;
};

std::vector<FeatureIndex> mask_to_features(SubsetMask mask) {
  std::vector<FeatureIndex> out;
  while (mask != 0) {
    out.push_back(static_cast<FeatureIndex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

void IcpConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
}

std::uint64_t icp_test_count(std::size_t n_features,
                             std::optional<std::size_t> max_subset_size) {
  const std::size_t cap = std::min(n_features, max_subset_size.value_or(n_features));
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= cap; ++s) total += binomial(n_features, s);
  return total;
}

void check_icp_feasible(std::size_t n_features,
                        std::optional<std::size_t> max_subset_size) {
  if (n_features > 63) {
    throw InfeasibleError("ICP supports at most 63 features");
  }
  if (!max_subset_size && n_features > kMaxEnumerableFeatures) {
    throw InfeasibleError(
        "ICP over " + std::to_string(n_features) +
        " features needs 2^" + std::to_string(n_features) +
        " conditional tests; set a maximum subset size");
  }
  if (icp_test_count(n_features, max_subset_size) > kMaxIcpTests) {
    throw InfeasibleError("ICP subset enumeration exceeds " +
                          std::to_string(kMaxIcpTests) + " tests");
  }
}

IcpResult icp_fit(const Dataset& data, const IcpConfig& config) {
  config.validate();
  if (data.n_distinct_envs() < 2) {
    throw ConfigError(
        "invariance is untestable: the data holds a single environment");
  }
  const std::size_t d = data.n_features();
  check_icp_feasible(d, config.max_subset_size);

  SubsetSearch search(data, std::min(d, config.max_subset_size.value_or(d)),
                      config.dof_rule);
  search.run();

  IcpResult result;
  SubsetMask intersection = ~SubsetMask{0};
  for (const auto& [mask, p] : search.results()) {
    const bool accepted = p > config.alpha;
    if (accepted) {
      intersection &= mask;
      ++result.accepted_count;
    }
    result.tests.push_back(SubsetTest{mask_to_features(mask), p, accepted});
  }
  std::sort(result.tests.begin(), result.tests.end(),
            [](const SubsetTest& a, const SubsetTest& b) {
              if (a.subset.size() != b.subset.size()) {
                return a.subset.size() < b.subset.size();
              }
              return a.subset < b.subset;
            });
  if (result.accepted_count > 0) result.parents = mask_to_features(intersection);
  return result;
}

}  // namespace icscm
