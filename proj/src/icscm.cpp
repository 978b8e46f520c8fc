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

#include "icscm/icscm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "icscm/coverage.hpp"
#include "icscm/errors.hpp"
#include "icscm/scm.hpp"

namespace icscm {

void IcscmConfig::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ConfigError("p must be a positive finite number");
  }
  if (max_rules < 1) throw ConfigError("max_rules must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  if (min_leaf < 1) throw ConfigError("min_leaf must be >= 1");
}

double leaf_invariance_pvalue(const stats::ContingencyTable& leaf,
                              const IcscmConfig& config) {
  if (leaf.total() < config.min_leaf) return 1.0;
  return stats::independence_test(leaf, config.test_method).p_value;
}

double leaf_invariance_pvalue(const Dataset& data, const Rule& rule,
                              const BitVector& negatives,
                              const BitVector& positives,
                              const IcscmConfig& config) {
  CoverageScanner scanner(data);
  scanner.reset(negatives, positives);
  return leaf_invariance_pvalue(scanner.leaf_table(rule), config);
}

FitReport icscm_fit(const Dataset& data, const IcscmConfig& config,
                    std::span<const Rule> rules) {
  config.validate();
  if (rules.empty()) throw ConfigError("empty candidate rule set");
  if (data.n_distinct_envs() < 2) {
    throw ConfigError(
        "invariance is untestable: the data holds a single environment");
  }
  for (const Rule& r : rules) {
    if (r.feature >= data.n_features()) {
      throw ConfigError("candidate rule reads a feature outside the dataset");
    }
  }

  BitVector positives = data.label_bits();
  BitVector negatives = ~positives;
  std::vector<bool> used(rules.size(), false);
  CoverageScanner scanner(data);
  FitReport report;

  while (true) {
    if (report.model.rules.size() >= config.max_rules) {
      report.stop_reason = StopReason::kMaxRules;
      break;
    }
    if (negatives.none()) {
      report.stop_reason = StopReason::kNoNegativesLeft;
      break;
    }

    scanner.reset(negatives, positives);
    std::optional<std::size_t> best;
    double best_utility = 0.0;
    double best_p = 1.0;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (used[i]) continue;
      const auto leaf = scanner.leaf_table(rules[i]);
      const double pi = leaf_invariance_pvalue(leaf, config);
      if (!(pi > config.alpha)) continue;  // filtered
      double covered = 0.0;
      double errors = 0.0;
      for (std::size_t e = 0; e < leaf.cols(); ++e) {
        covered += static_cast<double>(leaf.at(0, e));
        errors += static_cast<double>(leaf.at(1, e));
      }
      const double u = covered - config.p * errors;
      if (!best || u > best_utility) {
        best = i;
        best_utility = u;
        best_p = pi;
      }
    }
    if (!best) {
      report.stop_reason = StopReason::kNoValidRule;
      break;
    }

    const Rule& chosen = rules[*best];
    used[*best] = true;
    report.model.rules.push_back(chosen);
    const BitVector truth = chosen.truth_vector(data);
    negatives &= truth;
    positives &= truth;

    scanner.reset(negatives, positives);
    const auto remaining = scanner.remaining_table();
    const double gamma = leaf_invariance_pvalue(remaining, config);
    report.iterations.push_back(
        IterationLog{chosen, best_utility, best_p, gamma});
    if (gamma > config.alpha) {
      report.stop_reason = StopReason::kInvarianceReached;
      break;
    }
  }

  if (config.prune && !report.model.rules.empty()) {
    std::vector<PruneStep> steps;
    report.model = prune(report.model, data, config.alpha, &steps);
    for (const PruneStep& s : steps) report.pruned_rules.push_back(s.removed);
  }
  report.selected_features = report.model.features();
  return report;
}

FitReport icscm_fit(const Dataset& data, const IcscmConfig& config) {
  const auto rules = candidate_rules(data);
  return icscm_fit(data, config, rules);
}

std::vector<std::uint64_t> joint_strata(
    const Dataset& data, std::span<const FeatureIndex> features) {
  if (features.size() > 63) {
    throw ConfigError("cannot stratify on more than 63 features");
  }
  std::vector<std::uint64_t> ids(data.n_samples(), 0);
  for (FeatureIndex f : features) {
    const auto col = data.column(f);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = (ids[i] << 1) | col[i];
  }
  return ids;
}

Conjunction prune(const Conjunction& model, const Dataset& data, double alpha,
                  std::vector<PruneStep>* steps) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  Conjunction out = model;
  bool removed = true;
  while (removed && !out.rules.empty()) {
    removed = false;
    for (std::size_t idx = 0; idx < out.rules.size(); ++idx) {
      const FeatureIndex dropped = out.rules[idx].feature;
      std::vector<FeatureIndex> rest;
      for (FeatureIndex f : out.features()) {
        if (f != dropped) rest.push_back(f);
      }
      const auto strata = joint_strata(data, rest);
      const double p =
          stats::conditional_gtest(data.labels(), data.envs(), strata).p_value;
      if (p > alpha) {
        if (steps != nullptr) {
          for (const Rule& r : out.rules) {
            if (r.feature == dropped) steps->push_back(PruneStep{r, p});
          }
        }
        std::erase_if(out.rules,
                      [&](const Rule& r) { return r.feature == dropped; });
        removed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace icscm
