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

#include "icscm/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "icscm/errors.hpp"

namespace icscm::stats {
namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// P(a, x) by its power series; converges quickly for x < a + 1.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Q(a, x) by the continued fraction of Gamma(a, x), modified Lentz.
double upper_gamma_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a)) * h;
}

std::size_t distinct_cols(std::span<const EnvId> e) {
  return e.empty() ? 0
                   : static_cast<std::size_t>(
                         *std::max_element(e.begin(), e.end())) + 1;
}

void check_labels(std::span<const std::uint8_t> y) {
  for (std::uint8_t v : y) {
    if (v > 1) throw InputError("label is not 0/1");
  }
}

TestResult finish(double statistic, std::size_t dof) {
  TestResult out;
  out.statistic = std::max(0.0, statistic);
  out.dof = dof;
  if (dof == 0) {
    out.degenerate = true;
    out.p_value = 1.0;
  } else {
    out.p_value = chi2_sf(out.statistic, static_cast<double>(dof));
  }
  return out;
}

}  // namespace

std::string_view to_string(TestMethod method) {
  return method == TestMethod::kChi2 ? "chi2" : "gtest";
}

std::optional<TestMethod> parse_test_method(std::string_view text) {
  if (text == "chi2") return TestMethod::kChi2;
  if (text == "gtest") return TestMethod::kGTest;
  return std::nullopt;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw InputError("regularized_gamma_q needs a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::clamp(1.0 - lower_gamma_series(a, x), 0.0, 1.0);
  return std::clamp(upper_gamma_fraction(a, x), 0.0, 1.0);
}

double chi2_sf(double x, double dof) {
  if (!std::isfinite(x)) throw InputError("chi2_sf: statistic is not finite");
  if (x < 0.0) throw InputError("chi2_sf: negative statistic");
  if (!(dof >= 1.0)) throw InputError("chi2_sf: dof must be >= 1");
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), counts_(rows * cols, 0) {}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols,
                                   std::vector<std::uint64_t> counts)
    : rows_(rows), cols_(cols), counts_(std::move(counts)) {
  if (counts_.size() != rows_ * cols_) {
    throw InputError("contingency table needs rows * cols counts");
  }
}

std::uint64_t ContingencyTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

TableStatistic table_statistic(std::span<const std::uint64_t> counts,
                               std::size_t rows, std::size_t cols,
                               TestMethod method) {
  // Stack buffers cover the 2 x k tables used everywhere here; larger
  // tables fall back to the heap.
  constexpr std::size_t kInline = 32;
  std::array<double, kInline> row_inline{};
  std::array<double, kInline> col_inline{};
  std::vector<double> row_heap;
  std::vector<double> col_heap;
  std::span<double> row_sum(row_inline.data(), rows);
  std::span<double> col_sum(col_inline.data(), cols);
  if (rows > kInline) {
    row_heap.assign(rows, 0.0);
    row_sum = row_heap;
  }
  if (cols > kInline) {
    col_heap.assign(cols, 0.0);
    col_sum = col_heap;
  }
  double n = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double o = static_cast<double>(counts[r * cols + c]);
      row_sum[r] += o;
      col_sum[c] += o;
      n += o;
    }
  }
  TableStatistic out;
  if (n == 0.0) return out;

  const auto nonzero = [](std::span<const double> v) {
    return static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](double s) { return s > 0.0; }));
  };
  const std::size_t live_rows = nonzero(row_sum);
  const std::size_t live_cols = nonzero(col_sum);
  if (live_rows < 2 || live_cols < 2) return out;
  out.dof = (live_rows - 1) * (live_cols - 1);

  double stat = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_sum[r] == 0.0) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_sum[c] == 0.0) continue;
      const double o = static_cast<double>(counts[r * cols + c]);
      const double expected = row_sum[r] * col_sum[c] / n;
      if (method == TestMethod::kChi2) {
        const double diff = o - expected;
        stat += diff * diff / expected;
      } else if (o > 0.0) {
        stat += o * std::log(o / expected);
      }
    }
  }
  out.statistic = method == TestMethod::kGTest ? 2.0 * stat : stat;
  return out;
}

TestResult independence_test(const ContingencyTable& table,
                             TestMethod method) {
  const TableStatistic s =
      table_statistic(table.counts(), table.rows(), table.cols(), method);
  return finish(s.statistic, s.dof);
}

TestResult independence_test(std::span<const std::uint8_t> y,
                             std::span<const EnvId> e, TestMethod method) {
  if (y.size() != e.size()) {
    throw InputError("independence_test: y has " + std::to_string(y.size()) +
                     " entries, e has " + std::to_string(e.size()));
  }
  if (y.empty()) throw InputError("independence_test: empty input");
  check_labels(y);
  ContingencyTable table(2, distinct_cols(e));
  for (std::size_t i = 0; i < y.size(); ++i) table.add(y[i], e[i]);
  return independence_test(table, method);
}

StratifiedCounts::StratifiedCounts(std::size_t n_strata, std::size_t rows,
                                   std::size_t cols)
    : n_strata_(n_strata),
      rows_(rows),
      cols_(cols),
      counts_(n_strata * rows * cols, 0) {}

std::string_view to_string(DofRule rule) {
  return rule == DofRule::kNonzeroMarginals ? "nonzero-marginals"
                                            : "all-strata";
}

std::optional<DofRule> parse_dof_rule(std::string_view text) {
  if (text == "nonzero-marginals") return DofRule::kNonzeroMarginals;
  if (text == "all-strata") return DofRule::kAllStrata;
  return std::nullopt;
}

namespace {

constexpr double kRowsPerDof = 10.0;

TestResult stratified_gtest_impl(const StratifiedCounts& counts, DofRule rule,
                                 std::uint64_t n_strata) {
  double statistic = 0.0;
  std::size_t dof = 0;
  std::vector<std::uint64_t> row_total(counts.rows(), 0);
  std::vector<std::uint64_t> col_total(counts.cols(), 0);
  for (std::size_t s = 0; s < counts.n_strata(); ++s) {
    const auto cells = counts.stratum(s);
    const TableStatistic t = table_statistic(cells, counts.rows(),
                                             counts.cols(), TestMethod::kGTest);
    statistic += t.statistic;
    dof += t.dof;
    if (rule == DofRule::kAllStrata) {
      for (std::size_t r = 0; r < counts.rows(); ++r) {
        for (std::size_t c = 0; c < counts.cols(); ++c) {
          row_total[r] += cells[r * counts.cols() + c];
          col_total[c] += cells[r * counts.cols() + c];
        }
      }
    }
  }
  if (rule == DofRule::kNonzeroMarginals) return finish(statistic, dof);

  const auto live = [](const std::vector<std::uint64_t>& v) {
    return static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](std::uint64_t n) { return n > 0; }));
  };
  const std::size_t live_rows = live(row_total);
  const std::size_t live_cols = live(col_total);
  const std::uint64_t n = std::accumulate(row_total.begin(), row_total.end(),
                                          std::uint64_t{0});
  if (live_rows < 2 || live_cols < 2) return finish(statistic, 0);
  const std::size_t all_dof = (live_rows - 1) * (live_cols - 1) * n_strata;
  if (static_cast<double>(n) < kRowsPerDof * static_cast<double>(all_dof)) {
    TestResult out = finish(statistic, all_dof);
    out.p_value = 1.0;
    out.degenerate = true;
    return out;
  }
  return finish(statistic, all_dof);
}

}  // namespace

TestResult stratified_gtest(const StratifiedCounts& counts, DofRule rule) {
  return stratified_gtest_impl(counts, rule, counts.n_strata());
}

TestResult conditional_gtest(std::span<const std::uint8_t> y,
                             std::span<const EnvId> e,
                             std::span<const std::uint64_t> strata,
                             DofRule rule,
                             std::optional<std::uint64_t> n_strata) {
  if (y.size() != e.size() || y.size() != strata.size()) {
    throw InputError("conditional_gtest: y, e and strata lengths differ");
  }
  check_labels(y);
  std::vector<std::uint64_t> ids(strata.begin(), strata.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  StratifiedCounts counts(ids.size(), 2, distinct_cols(e));
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto s = static_cast<std::size_t>(
        std::lower_bound(ids.begin(), ids.end(), strata[i]) - ids.begin());
    counts.add(s, y[i], e[i]);
  }
  if (rule == DofRule::kAllStrata) {
    if (!n_strata || *n_strata < ids.size()) {
      throw InputError(
          "conditional_gtest: all-strata dof needs the number of strata");
    }
    return stratified_gtest_impl(counts, rule, *n_strata);
  }
  return stratified_gtest(counts, rule);
}

}  // namespace icscm::stats
