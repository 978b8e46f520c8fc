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

#include "icscm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "icscm/errors.hpp"

namespace icscm {
namespace {

class Bernoulli {
 public:
  explicit Bernoulli(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint8_t draw(double p) {
    const double u =
        static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    return u < p ? 1 : 0;
  }

 private:
  std::mt19937_64 engine_;
};

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void SimConfig::validate() const {
  if (n_env == 0) throw ConfigError("n_env must be >= 1");
  if (n_samples_per_env == 0) throw ConfigError("n_samples_per_env must be >= 1");
  if (!is_probability(eps_y) || !is_probability(eps_xc) ||
      !is_probability(eps_xb)) {
    throw ConfigError("noise levels must be probabilities in [0, 1]");
  }
  if (p_xa.size() != n_env) {
    throw ConfigError("p_xa needs one row per environment (" +
                      std::to_string(n_env) + "), got " +
                      std::to_string(p_xa.size()));
  }
  for (const auto& row : p_xa) {
    if (!is_probability(row[0]) || !is_probability(row[1])) {
      throw ConfigError("p_xa entries must be probabilities in [0, 1]");
    }
  }
}

std::vector<std::string> GroundTruth::role_names() const {
  std::vector<std::string> names(parent_indices.size() +
                                 distractor_indices.size() + 1);
  for (std::size_t i = 0; i < parent_indices.size(); ++i) {
    names[parent_indices[i]] = "A" + std::to_string(i + 1);
  }
  for (std::size_t i = 0; i < distractor_indices.size(); ++i) {
    names[distractor_indices[i]] = "B" + std::to_string(i + 1);
  }
  names[child_index] = "C";
  return names;
}

Simulation simulate(const SimConfig& config) {
  config.validate();
  const std::size_t k = config.n_distractors;
  const std::size_t d = 3 + k;
  const std::size_t m = config.n_env * config.n_samples_per_env;

  std::vector<std::vector<std::uint8_t>> columns(d, std::vector<std::uint8_t>(m));
  std::vector<std::uint8_t> labels(m);
  std::vector<EnvId> envs(m);
  Bernoulli rng(config.seed);

  std::size_t row = 0;
  for (std::size_t e = 0; e < config.n_env; ++e) {
    const auto& p = config.p_xa[e];
    const auto e_bit = static_cast<std::uint8_t>(std::min<std::size_t>(e, 1));
    for (std::size_t s = 0; s < config.n_samples_per_env; ++s, ++row) {
      const std::uint8_t a1 = rng.draw(p[0]);
      const std::uint8_t a2 = rng.draw(p[1]);
      const std::uint8_t flip = rng.draw(config.eps_y);
      const std::uint8_t y = (a1 & a2) ^ flip;
      const std::uint8_t use_env = rng.draw(config.eps_xc);
      columns[0][row] = a1;
      columns[1][row] = a2;
      for (std::size_t b = 0; b < k; ++b) {
        columns[2 + b][row] = rng.draw(config.eps_xb);
      }
      columns[d - 1][row] = use_env ? e_bit : y;
      labels[row] = y;
      envs[row] = static_cast<EnvId>(e);
    }
  }

  GroundTruth truth;
  truth.parent_indices = {0, 1};
  for (std::size_t b = 0; b < k; ++b) {
    truth.distractor_indices.push_back(static_cast<FeatureIndex>(2 + b));
  }
  truth.child_index = static_cast<FeatureIndex>(d - 1);

  return Simulation{
      Dataset(std::move(columns), std::move(labels), std::move(envs)),
      std::move(truth)};
}

OracleAccuracy oracle_accuracy(const Dataset& data, const GroundTruth& truth) {
  if (truth.parent_indices.size() != 2) {
    throw InputError("oracle_accuracy expects exactly two causal parents");
  }
  const auto a1 = data.column(truth.parent_indices[0]);
  const auto a2 = data.column(truth.parent_indices[1]);
  const auto c = data.column(truth.child_index);
  const auto y = data.labels();
  std::size_t hit_parents = 0;
  std::size_t hit_child = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    hit_parents += y[i] == (a1[i] & a2[i]);
    hit_child += y[i] == c[i];
  }
  const double m = static_cast<double>(y.size());
  return {static_cast<double>(hit_parents) / m,
          static_cast<double>(hit_child) / m};
}

}  // namespace icscm
