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
#include <span>
#include <vector>

#include "icscm/bitvector.hpp"
#include "icscm/data_model.hpp"
#include "icscm/stats.hpp"

namespace icscm {

struct IcscmConfig {
  double p = 1.0;
  std::size_t max_rules = 10;
  // Independence threshold shared by the leaf filter, the stopping test and
  // pruning.
  double alpha = 0.05;
  // Leaves with fewer samples are not tested (p = 1).
  std::size_t min_leaf = 10;
  stats::TestMethod test_method = stats::TestMethod::kChi2;
  bool prune = true;

  void validate() const;  // throws ConfigError
};

// p-value of the Y-vs-E independence test among the remaining samples the
// rule sends to its negative leaf (covered negatives plus misclassified
// positives). Returns 1 when that leaf holds fewer than min_leaf samples.
double leaf_invariance_pvalue(const Dataset& data, const Rule& rule,
                              const BitVector& negatives,
                              const BitVector& positives,
                              const IcscmConfig& config);

// Leaf test on an already counted 2 x k (label, environment) table.
double leaf_invariance_pvalue(const stats::ContingencyTable& leaf,
                              const IcscmConfig& config);

// Set Covering Machine restricted to rules whose negative leaf is invariant
// across environments, stopping once Y and E are independent among the
// samples the model still predicts positive. Throws ConfigError when the
// data has fewer than two environments.
FitReport icscm_fit(const Dataset& data, const IcscmConfig& config,
                    std::span<const Rule> rules);
FitReport icscm_fit(const Dataset& data, const IcscmConfig& config);

struct PruneStep {
  Rule removed;
  double p_value;
};

// Removes every rule whose feature X satisfies Y _||_ E | (selected \ X)
// under the conditional G-test, rescanning from the first rule after each
// removal until a full pass removes nothing.
Conjunction prune(const Conjunction& model, const Dataset& data, double alpha,
                  std::vector<PruneStep>* steps = nullptr);

// Stratum id of every sample: the joint value of the given features.
std::vector<std::uint64_t> joint_strata(const Dataset& data,
                                        std::span<const FeatureIndex> features);

}  // namespace icscm
