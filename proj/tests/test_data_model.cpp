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

#include <doctest.h>

#include <vector>

#include "icscm/data_model.hpp"
#include "icscm/errors.hpp"
#include "icscm/scm.hpp"

using namespace icscm;

namespace {

Dataset tiny(std::vector<std::vector<std::uint8_t>> cols) {
  const std::size_t m = cols.front().size();
  std::vector<std::uint8_t> y(m, 0);
  std::vector<EnvId> e(m, 0);
  for (std::size_t i = 0; i < m; ++i) y[i] = i % 2;
  return Dataset(std::move(cols), std::move(y), std::move(e));
}

}  // namespace

TEST_SUITE("data_model") {

TEST_CASE("empty conjunction predicts 1") {
  Conjunction h;
  CHECK(h.predict(std::vector<std::uint8_t>{0, 1, 0}) == 1);
  CHECK(h.predict(std::vector<std::uint8_t>{}) == 1);
}

TEST_CASE("conjunction truth table") {
  Conjunction h{{Rule{0, 1}, Rule{1, 1}}};
  CHECK(h.predict(std::vector<std::uint8_t>{1, 1, 0}) == 1);
  CHECK(h.predict(std::vector<std::uint8_t>{1, 0, 0}) == 0);
  CHECK(h.predict(std::vector<std::uint8_t>{0, 1, 1}) == 0);
}

TEST_CASE("disjunction mode is the OR of its rules") {
  Conjunction h{{Rule{0, 1}, Rule{1, 1}}, true};
  CHECK(h.predict(std::vector<std::uint8_t>{0, 1}) == 1);
  CHECK(h.predict(std::vector<std::uint8_t>{1, 0}) == 1);
  CHECK(h.predict(std::vector<std::uint8_t>{0, 0}) == 0);
}

TEST_CASE("short feature rows are rejected") {
  Conjunction h{{Rule{2, 1}}};
  CHECK_THROWS_AS(h.predict(std::vector<std::uint8_t>{1, 1}), InputError);
}

TEST_CASE("De Morgan identity holds exhaustively for d <= 4") {
  // Every model over d features with up to d rules (one per feature, any
  // polarity, any subset) against every input row.
  for (std::size_t d = 1; d <= 4; ++d) {
    std::size_t pow3 = 1;
    for (std::size_t j = 0; j < d; ++j) pow3 *= 3;
    for (std::size_t code = 0; code < pow3; ++code) {
      Conjunction conj;
      std::size_t c = code;
      for (std::size_t j = 0; j < d; ++j, c /= 3) {
        if (c % 3 == 1) conj.rules.push_back(Rule{static_cast<FeatureIndex>(j), 1});
        if (c % 3 == 2) conj.rules.push_back(Rule{static_cast<FeatureIndex>(j), 0});
      }
      Conjunction disj{{}, true};
      for (const auto& r : conj.rules) disj.rules.push_back(r.negated());
      for (std::size_t bits = 0; bits < (1u << d); ++bits) {
        std::vector<std::uint8_t> x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = (bits >> j) & 1u;
        CHECK(conj.predict(x) == 1 - disj.predict(x));
        CHECK(conj.predict(x) == conj.predict(x));
      }
    }
  }
}

TEST_CASE("candidate rules cover both polarities of varying features") {
  SUBCASE("three varying features give six rules") {
    const auto data = tiny({{0, 1, 0, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}});
    const auto rules = candidate_rules(data);
    REQUIRE(rules.size() == 6);
    CHECK(rules[0] == Rule{0, 1});
    CHECK(rules[1] == Rule{0, 0});
    CHECK(rules[5] == Rule{2, 0});
  }
  SUBCASE("constant features are skipped") {
    const auto data = tiny({{0, 1, 0, 1}, {0, 0, 0, 0}});
    const auto rules = candidate_rules(data);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].feature == 0);
    CHECK(rules[1].feature == 0);
  }
  SUBCASE("single feature") {
    const auto rules = candidate_rules(tiny({{1, 0}}));
    CHECK(rules == std::vector<Rule>{Rule{0, 1}, Rule{0, 0}});
  }
}

TEST_CASE("rule truth vectors have one bit per sample") {
  const auto data = tiny({{0, 1, 1, 0, 1}});
  const auto t = Rule{0, 1}.truth_vector(data);
  CHECK(t.size() == 5);
  CHECK(t.count() == 3);
  CHECK((Rule{0, 0}.truth_vector(data) | t).count() == 5);
}

TEST_CASE("selected features are the union of rule features") {
  Conjunction h{{Rule{3, 1}, Rule{1, 0}, Rule{3, 0}}};
  CHECK(h.features() == std::vector<FeatureIndex>{1, 3});
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset({{0, 1}}, {0}, {0, 0}), InputError);
  CHECK_THROWS_AS(Dataset({{0, 1}}, {0, 2}, {0, 0}), InputError);
  CHECK_THROWS_AS(Dataset({{0, 3}}, {0, 1}, {0, 0}), InputError);
  CHECK_THROWS_AS(Dataset({}, {0, 1}, {0, 0}), InputError);
  CHECK_THROWS_AS(Dataset({{0, 1}}, {0, 1}, {0, 0}, {"a", "b"}), InputError);
  const Dataset ok({{0, 1}, {1, 1}}, {0, 1}, {0, 3});
  CHECK(ok.n_envs() == 4);
  CHECK(ok.n_distinct_envs() == 2);
  CHECK(ok.feature_names() == std::vector<std::string>{"x0", "x1"});
  CHECK(ok.feature_index("x1") == 1u);
  CHECK_FALSE(ok.feature_index("y").has_value());
}

TEST_CASE("stop reasons round-trip through their names") {
  for (auto r : {StopReason::kNoNegativesLeft, StopReason::kMaxRules,
                 StopReason::kInvarianceReached, StopReason::kNoValidRule}) {
    CHECK(parse_stop_reason(to_string(r)) == r);
  }
  CHECK(to_string(StopReason::kNoValidRule) == "no_valid_rule");
  CHECK_FALSE(parse_stop_reason("bogus").has_value());
}

}  // TEST_SUITE
