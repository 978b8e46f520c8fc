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
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "icscm/data_model.hpp"

namespace icscm::stats {

enum class TestMethod { kChi2, kGTest };

std::string_view to_string(TestMethod method);
std::optional<TestMethod> parse_test_method(std::string_view text);

struct TestResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  // No degrees of freedom left (a constant variable, or a guard tripped);
  // such a test never rejects and reports p = 1.
  bool degenerate = false;
};

// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), for
// a > 0 and x >= 0. Power series below x = a + 1, Lentz continued fraction
// above.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-squared distribution with `dof` degrees of
// freedom. Throws InputError for non-finite or negative x, or dof < 1.
double chi2_sf(double x, double dof);

// rows x cols table of counts (rows are Y values, columns environments).
class ContingencyTable {
 public:
  ContingencyTable(std::size_t rows, std::size_t cols);
  ContingencyTable(std::size_t rows, std::size_t cols,
                   std::vector<std::uint64_t> counts);  // row-major

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t at(std::size_t r, std::size_t c) const {
    return counts_[r * cols_ + c];
  }
  void add(std::size_t r, std::size_t c, std::uint64_t n = 1) {
    counts_[r * cols_ + c] += n;
  }
  std::uint64_t total() const;
  std::span<const std::uint64_t> counts() const { return counts_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> counts_;
};

// Statistic and degrees of freedom of one table without the p-value.
// dof counts only rows and columns with a nonzero marginal.
struct TableStatistic {
  double statistic = 0.0;
  std::size_t dof = 0;
};
TableStatistic table_statistic(std::span<const std::uint64_t> counts,
                               std::size_t rows, std::size_t cols,
                               TestMethod method);

TestResult independence_test(const ContingencyTable& table, TestMethod method);

// Builds the 2 x k table of (y, e). Throws InputError on length mismatch,
// empty input, or a label outside {0, 1}.
TestResult independence_test(std::span<const std::uint8_t> y,
                             std::span<const EnvId> e, TestMethod method);

// Counts laid out as [stratum][row][col]; the building block of every
// conditional test.
class StratifiedCounts {
 public:
  StratifiedCounts(std::size_t n_strata, std::size_t rows, std::size_t cols);

  std::size_t n_strata() const { return n_strata_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void add(std::size_t stratum, std::size_t r, std::size_t c,
           std::uint64_t n = 1) {
    counts_[(stratum * rows_ + r) * cols_ + c] += n;
  }
  std::span<const std::uint64_t> stratum(std::size_t s) const {
    return std::span<const std::uint64_t>(counts_).subspan(s * rows_ * cols_,
                                                           rows_ * cols_);
  }
  std::span<std::uint64_t> mutable_counts() { return counts_; }

 private:
  std::size_t n_strata_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> counts_;
};

// How a conditional test counts degrees of freedom.
enum class DofRule {
  // Per stratum, (nonzero rows - 1) * (nonzero cols - 1); strata that are
  // empty or constant in Y or E add nothing.
  kNonzeroMarginals,
  // (rows - 1) * (cols - 1) * n_strata with rows and columns counted over the
  // whole sample and every stratum counted whether populated or not. This is
  // the convention of the widely used `gsq` G-test package; like that package
  // it also reports p = 1 when the sample has fewer than 10 rows per dof.
  kAllStrata,
};

std::string_view to_string(DofRule rule);
std::optional<DofRule> parse_dof_rule(std::string_view text);

// Sum of per-stratum G statistics; dof according to `rule`.
TestResult stratified_gtest(const StratifiedCounts& counts,
                            DofRule rule = DofRule::kNonzeroMarginals);

// G-test of y against e conditioned on arbitrary stratum ids.
// With kAllStrata, n_strata is the number of possible conditioning
// assignments (unobserved ones included) and must be given.
TestResult conditional_gtest(std::span<const std::uint8_t> y,
                             std::span<const EnvId> e,
                             std::span<const std::uint64_t> strata,
                             DofRule rule = DofRule::kNonzeroMarginals,
                             std::optional<std::uint64_t> n_strata = {});

}  // namespace icscm::stats
