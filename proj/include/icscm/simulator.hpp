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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "icscm/data_model.hpp"

namespace icscm {

// Discrete Bayesian network E -> (A1, A2) -> Y -> C <- E with independent
// distractors B1..Bk.
struct SimConfig {
  std::size_t n_env = 2;
  std::size_t n_samples_per_env = 10000;
  std::size_t n_distractors = 3;
  double eps_y = 0.05;   // probability of flipping Y = A1 AND A2
  double eps_xc = 0.05;  // probability that C copies min(E, 1) instead of Y
  double eps_xb = 0.5;   // P(B_i = 1)
  // Per environment: {P(A1 = 1), P(A2 = 1)}.
  std::vector<std::array<double, 2>> p_xa = {{0.1, 0.5}, {0.5, 0.3}};
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// Column roles. Layout: A1, A2, B1..Bk, C.
struct GroundTruth {
  std::vector<FeatureIndex> parent_indices;
  std::vector<FeatureIndex> distractor_indices;
  FeatureIndex child_index = 0;

  std::vector<std::string> role_names() const;  // "A1", "B3", "C", ...
};

struct Simulation {
  Dataset data;
  GroundTruth truth;
};

// Rows come environment by environment. Per row the generator draws, in
// order: A1, A2, the Y flip, the C switch, then B1..Bk. Deterministic in
// config.seed on every platform (mt19937_64 plus an explicit 53-bit uniform).
Simulation simulate(const SimConfig& config);

struct OracleAccuracy {
  double acc_parents = 0.0;  // P(Y == A1 AND A2)
  double acc_child = 0.0;    // P(Y == C)
};

OracleAccuracy oracle_accuracy(const Dataset& data, const GroundTruth& truth);

// 64-bit finalizer used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace icscm
