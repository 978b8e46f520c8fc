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

#include "icscm/data_model.hpp"

#include <algorithm>

#include "icscm/errors.hpp"

namespace icscm {

Dataset::Dataset(std::vector<std::vector<std::uint8_t>> columns,
                 std::vector<std::uint8_t> labels, std::vector<EnvId> envs,
                 std::vector<std::string> feature_names)
    : columns_(std::move(columns)),
      labels_(std::move(labels)),
      envs_(std::move(envs)),
      feature_names_(std::move(feature_names)) {
  const std::size_t m = labels_.size();
  if (m == 0) throw InputError("dataset has no samples");
  if (columns_.empty()) throw InputError("dataset has no features");
  if (envs_.size() != m) {
    throw InputError("environment vector length " +
                     std::to_string(envs_.size()) + " != label count " +
                     std::to_string(m));
  }
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != m) {
      throw InputError("feature column " + std::to_string(j) + " has " +
                       std::to_string(columns_[j].size()) + " rows, expected " +
                       std::to_string(m));
    }
    for (std::uint8_t v : columns_[j]) {
      if (v > 1) {
        throw InputError("feature column " + std::to_string(j) +
                         " holds a non-binary value");
      }
    }
  }
  for (std::uint8_t y : labels_) {
    if (y > 1) throw InputError("label is not 0/1");
  }
  if (feature_names_.empty()) {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      feature_names_.push_back("x" + std::to_string(j));
    }
  } else if (feature_names_.size() != columns_.size()) {
    throw InputError("feature name count does not match column count");
  }

  column_bits_.reserve(columns_.size());
  for (const auto& col : columns_) {
    column_bits_.push_back(BitVector::from_bytes(col));
  }
  label_bits_ = BitVector::from_bytes(labels_);

  const EnvId max_env = *std::max_element(envs_.begin(), envs_.end());
  env_masks_.assign(static_cast<std::size_t>(max_env) + 1, BitVector(m));
  for (std::size_t i = 0; i < m; ++i) env_masks_[envs_[i]].set(i);
}

std::size_t Dataset::n_distinct_envs() const {
  return static_cast<std::size_t>(
      std::count_if(env_masks_.begin(), env_masks_.end(),
                    [](const BitVector& mask) { return !mask.none(); }));
}

std::vector<std::uint8_t> Dataset::row(std::size_t sample) const {
  std::vector<std::uint8_t> out(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    out[j] = columns_[j][sample];
  }
  return out;
}

std::optional<std::size_t> Dataset::feature_index(std::string_view name) const {
  for (std::size_t j = 0; j < feature_names_.size(); ++j) {
    if (feature_names_[j] == name) return j;
  }
  return std::nullopt;
}

BitVector Rule::truth_vector(const Dataset& data) const {
  if (feature >= data.n_features()) {
    throw InputError("rule feature index out of range");
  }
  const BitVector& col = data.column_bits(feature);
  return expected_value == 1 ? col : ~col;
}

std::string to_string(const Rule& rule, const Dataset* data) {
  std::string name = data != nullptr && rule.feature < data->n_features()
                         ? data->feature_names()[rule.feature]
                         : "x" + std::to_string(rule.feature);
  return name + " == " + std::to_string(rule.expected_value);
}

std::uint8_t Conjunction::predict(std::span<const std::uint8_t> x) const {
  bool all = true;
  for (const Rule& r : rules) {
    if (r.feature >= x.size()) {
      throw InputError("feature row has " + std::to_string(x.size()) +
                       " entries but a rule reads feature " +
                       std::to_string(r.feature));
    }
    const bool v = disjunction ? r.negated().evaluate(x) : r.evaluate(x);
    all = all && v;
  }
  if (disjunction) return all ? 0 : 1;
  return all ? 1 : 0;
}

std::vector<std::uint8_t> Conjunction::predict(const Dataset& data) const {
  std::vector<std::uint8_t> out(data.n_samples());
  std::vector<std::uint8_t> x(data.n_features());
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    for (std::size_t j = 0; j < data.n_features(); ++j) x[j] = data.value(i, j);
    out[i] = predict(x);
  }
  return out;
}

std::vector<FeatureIndex> Conjunction::features() const {
  std::vector<FeatureIndex> out;
  for (const Rule& r : rules) out.push_back(r.feature);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kNoNegativesLeft: return "no_negatives_left";
    case StopReason::kMaxRules: return "max_rules";
    case StopReason::kInvarianceReached: return "invariance_reached";
    case StopReason::kNoValidRule: return "no_valid_rule";
  }
  return "unknown";
}

std::optional<StopReason> parse_stop_reason(std::string_view text) {
  for (StopReason r : {StopReason::kNoNegativesLeft, StopReason::kMaxRules,
                       StopReason::kInvarianceReached,
                       StopReason::kNoValidRule}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::vector<Rule> candidate_rules(const Dataset& data) {
  std::vector<Rule> rules;
  const std::size_t m = data.n_samples();
  for (std::size_t j = 0; j < data.n_features(); ++j) {
    const std::size_t ones = data.column_bits(j).count();
    if (ones == 0 || ones == m) continue;
    const auto f = static_cast<FeatureIndex>(j);
    rules.push_back(Rule{f, 1});
    rules.push_back(Rule{f, 0});
  }
  return rules;
}

double training_error(const Conjunction& model, const Dataset& data) {
  const auto pred = model.predict(data);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    wrong += pred[i] != data.labels()[i];
  }
  return static_cast<double>(wrong) / static_cast<double>(pred.size());
}

}  // namespace icscm
