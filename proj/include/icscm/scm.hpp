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

#include "icscm/bitvector.hpp"
#include "icscm/data_model.hpp"

namespace icscm {

struct ScmConfig {
  double p = 1.0;              // trade-off between covered negatives and errors
  std::size_t max_rules = 10;  // maximum conjunction length

  void validate() const;  // throws ConfigError
};

struct RuleCoverage {
  std::size_t covered_negatives = 0;        // negatives where the rule is 0
  std::size_t misclassified_positives = 0;  // positives where the rule is 0
};

RuleCoverage coverage(const Dataset& data, const Rule& rule,
                      const BitVector& negatives, const BitVector& positives);

// |covered negatives| - p * |misclassified positives|
double utility(const RuleCoverage& cov, double p);
double utility(const Dataset& data, const Rule& rule,
               const BitVector& negatives, const BitVector& positives,
               double p);

// Greedy Set Covering Machine for a conjunction. Ties in utility go to the
// lowest candidate index; a rule already in the model is never re-added.
// Throws ConfigError for an empty candidate list or invalid config.
FitReport scm_fit(const Dataset& data, const ScmConfig& config,
                  std::span<const Rule> rules);
FitReport scm_fit(const Dataset& data, const ScmConfig& config);

// Copy of the dataset with every label flipped.
Dataset with_negated_labels(const Dataset& data);

// Turns a conjunction learned on flipped labels into the equivalent
// disjunction on the original labels (De Morgan).
FitReport to_disjunction(FitReport report);

// Disjunction learned through the conjunction learner on flipped labels.
FitReport scm_fit_disjunction(const Dataset& data, const ScmConfig& config,
                              std::span<const Rule> rules);

}  // namespace icscm
