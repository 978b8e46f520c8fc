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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icscm/bitvector.hpp"

namespace icscm {

using FeatureIndex = std::uint32_t;
using EnvId = std::uint32_t;

// Binary features, binary labels and environment ids, stored column-wise.
// Each feature column is kept both as bytes (row access, stratification)
// and bit-packed (coverage counts in the greedy learners).
class Dataset {
 public:
  // columns[j][i] is feature j of sample i. Throws InputError unless every
  // column has the same length m >= 1, there is at least one feature, all
  // values are 0/1, and feature_names is empty or has one entry per column.
  // Empty feature_names yields x0..x{d-1}.
  Dataset(std::vector<std::vector<std::uint8_t>> columns,
          std::vector<std::uint8_t> labels, std::vector<EnvId> envs,
          std::vector<std::string> feature_names = {});

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return columns_.size(); }
  // One more than the largest environment id.
  std::size_t n_envs() const { return env_masks_.size(); }
  // Environment ids that actually occur.
  std::size_t n_distinct_envs() const;

  std::uint8_t value(std::size_t sample, std::size_t feature) const {
    return columns_[feature][sample];
  }
  std::span<const std::uint8_t> column(std::size_t feature) const {
    return columns_[feature];
  }
  const BitVector& column_bits(std::size_t feature) const {
    return column_bits_[feature];
  }
  std::vector<std::uint8_t> row(std::size_t sample) const;

  std::span<const std::uint8_t> labels() const { return labels_; }
  const BitVector& label_bits() const { return label_bits_; }
  std::span<const EnvId> envs() const { return envs_; }
  const BitVector& env_mask(EnvId e) const { return env_masks_[e]; }

  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  std::optional<std::size_t> feature_index(std::string_view name) const;

 private:
  std::vector<std::vector<std::uint8_t>> columns_;
  std::vector<BitVector> column_bits_;
  std::vector<std::uint8_t> labels_;
  BitVector label_bits_;
  std::vector<EnvId> envs_;
  std::vector<BitVector> env_masks_;
  std::vector<std::string> feature_names_;
};

// x[feature] == expected_value
struct Rule {
  FeatureIndex feature = 0;
  std::uint8_t expected_value = 1;

  bool evaluate(std::span<const std::uint8_t> x) const {
    return x[feature] == expected_value;
  }
  Rule negated() const {
    return Rule{feature, static_cast<std::uint8_t>(1 - expected_value)};
  }
  // Samples of the dataset on which the rule evaluates to 1.
  BitVector truth_vector(const Dataset& data) const;

  bool operator==(const Rule&) const = default;
};

std::string to_string(const Rule& rule, const Dataset* data = nullptr);

// AND of rules in order. With `disjunction` set the model is the De Morgan
// dual: predict(x) = NOT(AND of negated rules) = OR of rules.
struct Conjunction {
  std::vector<Rule> rules;
  bool disjunction = false;

  // Throws InputError when x is too short for a rule's feature index.
  std::uint8_t predict(std::span<const std::uint8_t> x) const;
  std::vector<std::uint8_t> predict(const Dataset& data) const;

  std::vector<FeatureIndex> features() const;  // sorted, unique

  bool operator==(const Conjunction&) const = default;
};

enum class StopReason {
  kNoNegativesLeft,
  kMaxRules,
  kInvarianceReached,
  kNoValidRule,
};

std::string_view to_string(StopReason reason);
std::optional<StopReason> parse_stop_reason(std::string_view text);

struct IterationLog {
  Rule rule;
  double utility = 0.0;
  // p-value of the invariance test in the rule's negative leaf; unset for
  // plain SCM.
  std::optional<double> leaf_p_value;
  // p-value of the stopping test on the samples left after adding the rule.
  std::optional<double> remaining_p_value;
};

struct FitReport {
  Conjunction model;
  std::vector<FeatureIndex> selected_features;  // == model.features()
  std::vector<IterationLog> iterations;
  StopReason stop_reason = StopReason::kNoNegativesLeft;
  std::vector<Rule> pruned_rules;  // removed by pruning, in removal order
};

// Candidate rules x_j == 1, x_j == 0 for every feature j (feature-major,
// value 1 first). Features constant on the dataset contribute no rules.
std::vector<Rule> candidate_rules(const Dataset& data);

double training_error(const Conjunction& model, const Dataset& data);

}  // namespace icscm
