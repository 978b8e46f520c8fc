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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library's numerics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "icscm/data_model.hpp"

namespace oracle {

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb, double whole,
                      double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Upper tail of the chi-square density, integrated after t = u^2 so the
// integrand 2c u^(k-1) exp(-u^2/2) stays smooth at the origin for k = 1.
inline double chi2_sf(double x, int dof) {
  const double k = dof;
  const double log_c = -0.5 * k * std::log(2.0) - std::lgamma(0.5 * k);
  auto f = [&](double u) {
    if (u <= 0.0) return dof == 1 ? 2.0 * std::exp(log_c) : 0.0;
    return 2.0 * std::exp(log_c + (k - 1.0) * std::log(u) - 0.5 * u * u);
  };
  const double lo = std::sqrt(x);
  const double hi = std::sqrt(x + 400.0 + 40.0 * k);
  // Split so the adaptive rule sees the peak near sqrt(k - 1).
  const double mid = std::max(lo, std::sqrt(std::max(k - 1.0, 0.0)) + 4.0);
  if (mid >= hi) return integrate(f, lo, hi);
  return integrate(f, lo, mid) + integrate(f, mid, hi);
}

// Pearson and likelihood-ratio statistics in closed form:
//   X^2 = n (sum O^2 / (R C) - 1)
//   G   = 2 (sum O ln O - sum R ln R - sum C ln C + n ln n)
struct TableStats {
  long double chi2 = 0;
  long double g = 0;
  int dof = 0;
};

inline TableStats table_stats(const std::vector<std::uint64_t>& counts,
                              std::size_t rows, std::size_t cols) {
  std::vector<long double> r(rows, 0), c(cols, 0);
  long double n = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const long double o = counts[i * cols + j];
      r[i] += o;
      c[j] += o;
      n += o;
    }
  }
  auto xlogx = [](long double v) { return v > 0 ? v * std::log(v) : 0.0L; };
  TableStats s;
  int nr = 0, nc = 0;
  long double ratio = 0, g = xlogx(n);
  for (std::size_t i = 0; i < rows; ++i) {
    if (r[i] > 0) ++nr;
    g -= xlogx(r[i]);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (c[j] > 0) ++nc;
    g -= xlogx(c[j]);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const long double o = counts[i * cols + j];
      if (o > 0) {
        ratio += o * o / (r[i] * c[j]);
        g += xlogx(o);
      }
    }
  }
  s.dof = (nr > 0 && nc > 0) ? (nr - 1) * (nc - 1) : 0;
  s.chi2 = n > 0 ? n * (ratio - 1) : 0;
  s.g = 2 * g;
  if (s.chi2 < 0) s.chi2 = 0;
  if (s.g < 0) s.g = 0;
  return s;
}

// Greedy SCM recomputed sample by sample: every round rescans all rules
// against the explicit index lists of remaining negatives and positives.
inline std::vector<icscm::Rule> greedy_scm(const icscm::Dataset& data,
                                           const std::vector<icscm::Rule>& rules,
                                           double p, std::size_t max_rules) {
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    (data.labels()[i] ? pos : neg).push_back(i);
  }
  std::vector<bool> used(rules.size(), false);
  std::vector<icscm::Rule> chosen;
  while (chosen.size() < max_rules && !neg.empty()) {
    std::size_t best = rules.size();
    double best_u = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (used[r]) continue;
      double a = 0, b = 0;
      for (auto i : neg) a += data.value(i, rules[r].feature) != rules[r].expected_value;
      for (auto i : pos) b += data.value(i, rules[r].feature) != rules[r].expected_value;
      const double u = a - p * b;
      if (u > best_u) {
        best_u = u;
        best = r;
      }
    }
    if (best == rules.size()) break;
    used[best] = true;
    const auto rule = rules[best];
    chosen.push_back(rule);
    auto keep = [&](std::vector<std::size_t>& v) {
      std::vector<std::size_t> out;
      for (auto i : v) {
        if (data.value(i, rule.feature) == rule.expected_value) out.push_back(i);
      }
      v.swap(out);
    };
    keep(neg);
    keep(pos);
  }
  return chosen;
}

inline icscm::Dataset random_dataset(std::mt19937_64& rng, std::size_t m,
                                     std::size_t d, std::size_t k = 2) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<icscm::EnvId> env(0, static_cast<icscm::EnvId>(k - 1));
  std::vector<std::vector<std::uint8_t>> cols(d, std::vector<std::uint8_t>(m));
  std::vector<std::uint8_t> y(m);
  std::vector<icscm::EnvId> e(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) cols[j][i] = coin(rng);
    y[i] = coin(rng);
    e[i] = env(rng);
  }
  return icscm::Dataset(std::move(cols), std::move(y), std::move(e));
}

}  // namespace oracle
