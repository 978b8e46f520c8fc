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

#include "icscm/scm.hpp"

#include <cmath>
#include <optional>

#include "icscm/coverage.hpp"
#include "icscm/errors.hpp"

namespace icscm {

void ScmConfig::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ConfigError("p must be a positive finite number");
  }
  if (max_rules < 1) throw ConfigError("max_rules must be >= 1");
}

RuleCoverage coverage(const Dataset& data, const Rule& rule,
                      const BitVector& negatives, const BitVector& positives) {
  const BitVector& col = data.column_bits(rule.feature);
  const std::size_t neg_ones = negatives.and_count(col);
  const std::size_t pos_ones = positives.and_count(col);
  if (rule.expected_value == 1) {
    return {negatives.count() - neg_ones, positives.count() - pos_ones};
  }
  return {neg_ones, pos_ones};
}

double utility(const RuleCoverage& cov, double p) {
  return static_cast<double>(cov.covered_negatives) -
         p * static_cast<double>(cov.misclassified_positives);
}

double utility(const Dataset& data, const Rule& rule,
               const BitVector& negatives, const BitVector& positives,
               double p) {
  return utility(coverage(data, rule, negatives, positives), p);
}

FitReport scm_fit(const Dataset& data, const ScmConfig& config,
                  std::span<const Rule> rules) {
  config.validate();
  if (rules.empty()) throw ConfigError("empty candidate rule set");
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
  bool exhausted = false;

  while (report.model.rules.size() < config.max_rules && !negatives.none()) {
    scanner.reset(negatives, positives);
    std::optional<std::size_t> best;
    double best_utility = 0.0;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (used[i]) continue;
      const auto leaf = scanner.leaf_table(rules[i]);
      RuleCoverage cov;
      for (std::size_t e = 0; e < leaf.cols(); ++e) {
        cov.covered_negatives += leaf.at(0, e);
        cov.misclassified_positives += leaf.at(1, e);
      }
      const double u = utility(cov, config.p);
      if (!best || u > best_utility) {
        best = i;
        best_utility = u;
      }
    }
    if (!best) {
      exhausted = true;
      break;
    }
    const Rule& chosen = rules[*best];
    used[*best] = true;
    report.model.rules.push_back(chosen);
    report.iterations.push_back(IterationLog{chosen, best_utility, {}, {}});
    const BitVector truth = chosen.truth_vector(data);
    negatives &= truth;
    positives &= truth;
  }

  if (negatives.none()) {
    report.stop_reason = StopReason::kNoNegativesLeft;
  } else if (exhausted) {
    report.stop_reason = StopReason::kNoValidRule;
  } else {
    report.stop_reason = StopReason::kMaxRules;
  }
  report.selected_features = report.model.features();
  return report;
}

FitReport scm_fit(const Dataset& data, const ScmConfig& config) {
  const auto rules = candidate_rules(data);
  return scm_fit(data, config, rules);
}

Dataset with_negated_labels(const Dataset& data) {
  std::vector<std::vector<std::uint8_t>> columns;
  columns.reserve(data.n_features());
  for (std::size_t j = 0; j < data.n_features(); ++j) {
    const auto col = data.column(j);
    columns.emplace_back(col.begin(), col.end());
  }
  std::vector<std::uint8_t> labels(data.labels().begin(), data.labels().end());
  for (auto& y : labels) y = static_cast<std::uint8_t>(1 - y);
  return Dataset(std::move(columns), std::move(labels),
                 std::vector<EnvId>(data.envs().begin(), data.envs().end()),
                 data.feature_names());
}

FitReport to_disjunction(FitReport report) {
  for (Rule& r : report.model.rules) r = r.negated();
  for (IterationLog& it : report.iterations) it.rule = it.rule.negated();
  for (Rule& r : report.pruned_rules) r = r.negated();
  report.model.disjunction = true;
  return report;
}

FitReport scm_fit_disjunction(const Dataset& data, const ScmConfig& config,
                              std::span<const Rule> rules) {
  return to_disjunction(scm_fit(with_negated_labels(data), config, rules));
}

}  // namespace icscm
