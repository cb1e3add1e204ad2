// Copyright 2026 The lagot Authors
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

#include "doctest.h"

#include <cmath>
#include <sstream>

#include "lagot/error.hpp"
#include "lagot/harness.hpp"
#include "test_support.hpp"

using namespace lagot;
using lagot::testing::code_of;

namespace {

VerifyConfig config(Theorem t, std::string cost, int trials = 5) {
  VerifyConfig cfg;
  cfg.theorem = t;
  cfg.seed = 2024;
  cfg.trials = trials;
  cfg.cost = std::move(cost);
  return cfg;
}

double value_of(const TrialRecord& t, const std::string& name) {
  for (const auto& [k, v] : t.values) {
    if (k == name) return v;
  }
  FAIL("missing value " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("suite names round-trip") {
  for (Theorem t : all_theorems()) CHECK(parse_theorem(to_string(t)) == t);
  CHECK(code_of([] { parse_theorem("thm9_9"); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("config validation and JSON") {
  VerifyConfig cfg = config(Theorem::kCor2_8, "affine_exp:0.3", 7);
  const VerifyConfig back = config_from_json(to_json(cfg));
  CHECK(to_json(back).dump() == to_json(cfg).dump());

  cfg.trials = 0;
  CHECK(code_of([&] { validate_config(cfg); }) == ErrorCode::kConfigInvalid);
  cfg.trials = 1;
  cfg.tolerance = 0.0;
  CHECK(code_of([&] { verify(cfg); }) == ErrorCode::kConfigInvalid);
  CHECK(code_of([] { config_from_json(Json{{"trials", 3}}); }) == ErrorCode::kConfigInvalid);
  CHECK(code_of([] { config_from_json(Json{{"theorem", "thm2_1"}, {"trials", "many"}}); }) ==
        ErrorCode::kConfigInvalid);
  CHECK(config_from_json(Json{{"theorem", "eq1_6"}}).trials == VerifyConfig{}.trials);
}

TEST_CASE("fnv1a digests") {
  // Published FNV-1a 64-bit test vectors.
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("modified cost suite on sqrt cost, 20 trials") {
  VerifyConfig cfg = config(Theorem::kThm2_1, "power:0.5", 20);
  cfg.n_atoms = 4;
  cfg.dim = 2;
  const Report r = verify(cfg);
  CHECK(r.pass());
  CHECK(r.passed() == 20);
  for (const TrialRecord& t : r.trials) {
    CHECK(std::abs(value_of(t, "tilde1_random_sets") - value_of(t, "T")) <= 1e-9);
  }
}

TEST_CASE("detour suite fixed instance") {
  const Report r = verify(config(Theorem::kProp2_3, "remark_iii", 4));
  CHECK(r.pass());
  const TrialRecord& fixed = r.trials.front();
  CHECK(value_of(fixed, "T") == doctest::Approx(0.2706705664732254).epsilon(1e-12));
  CHECK(value_of(fixed, "tilde2_upper") == doctest::Approx(0.07326255555493671).epsilon(1e-12));
  CHECK(value_of(fixed, "gap") >= 0.19);
}

TEST_CASE("refusals") {
  CHECK(code_of([] { verify(config(Theorem::kThm2_1, "square")); }) ==
        ErrorCode::kAssumptionRefused);
  CHECK(code_of([] { verify(config(Theorem::kThm2_2, "remark_iii")); }) ==
        ErrorCode::kAssumptionRefused);
  CHECK(code_of([] { verify(config(Theorem::kProp2_3, "power:0.5")); }) ==
        ErrorCode::kAssumptionRefused);
  CHECK(code_of([] { verify(config(Theorem::kCor2_4, "affine_exp:0")); }) ==
        ErrorCode::kAssumptionRefused);
  CHECK(code_of([] { verify(config(Theorem::kEq1_9_0416, "power:0.5")); }) ==
        ErrorCode::kAssumptionRefused);
  CHECK(code_of([] { verify(config(Theorem::kThm2_1, "cubic")); }) == ErrorCode::kUnknownCost);
  VerifyConfig flat = config(Theorem::kProp2_3, "remark_iii");
  flat.dim = 1;
  CHECK(code_of([&] { verify(flat); }) == ErrorCode::kConfigInvalid);
}

TEST_CASE("every suite passes on a suitable cost") {
  const std::pair<Theorem, const char*> runs[] = {
      {Theorem::kThm2_1, "remark_iii"},   {Theorem::kThm2_2, "power:0.3"},
      {Theorem::kProp2_3, "remark_iii"},  {Theorem::kCor2_4, "power:0.5"},
      {Theorem::kCor2_4, "affine_exp:1"}, {Theorem::kThm2_6, "remark_iii"},
      {Theorem::kCor2_7, "affine_exp:0.3"}, {Theorem::kCor2_7, "power:0.5"},
      {Theorem::kCor2_8, "power:0.7"},    {Theorem::kEq1_6, "power:0.5"},
      {Theorem::kEq1_9_0416, "square"},   {Theorem::kEq1_9_0416, "linear"},
      {Theorem::kEq1_11_0508, "remark_iii"}, {Theorem::kEq1_11_0508, "square"},
  };
  for (const auto& [theorem, cost] : runs) {
    CAPTURE(to_string(theorem));
    CAPTURE(cost);
    VerifyConfig cfg = config(theorem, cost, 6);
    if (theorem == Theorem::kEq1_11_0508) cfg.tolerance = 1e-12;
    const Report r = verify(cfg);
    CHECK(r.pass());
    CHECK(r.min_margin() >= 0.0);
    for (const TrialRecord& t : r.trials) {
      CHECK(t.digest.size() == 16);
      CHECK_FALSE(t.checks.empty());
    }
  }
}

TEST_CASE("equalities record both one-sided margins") {
  TrialRecord t;
  t.equal("x", 1.0, 1.0 + 2e-9, 1e-9);
  REQUIRE(t.checks.size() == 2);
  CHECK(t.checks[0].name == "x:upper");
  CHECK(t.checks[0].pass);
  CHECK_FALSE(t.checks[1].pass);
  CHECK(t.checks[1].margin == doctest::Approx(-1e-9).epsilon(1e-6));
  CHECK_FALSE(t.pass);

  TrialRecord s;
  s.exceeds("gap", 1.0, 0.5, 0.4);
  CHECK(s.pass);
  s.exceeds("gap2", 1.0, 0.5, 0.6);
  CHECK_FALSE(s.pass);
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
  const VerifyConfig cfg = config(Theorem::kThm2_6, "power:0.5", 4);
  const std::string a = to_json(verify(cfg)).dump(2);
  const std::string b = to_json(verify(cfg)).dump(2);
  CHECK(a == b);
  CHECK(to_json(report_from_json(Json::parse(a))).dump(2) == a);

  VerifyConfig other = cfg;
  other.seed += 1;
  CHECK(to_json(verify(other)).dump(2) != a);
}

TEST_CASE("plot data") {
  const Report fast = verify(config(Theorem::kEq1_6, "power:0.5", 1));
  const std::string csv = emit_plot_data(fast, "eq1_6");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial,n,value");
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    double trial = 0.0, index = 0.0, value = 0.0;
    char comma = 0;
    std::istringstream row(line);
    row >> trial >> comma >> index >> comma >> value;
    CHECK(index == n);
    CHECK(value == doctest::Approx(1.0 / std::sqrt(n)).epsilon(1e-14));
  }
  CHECK(n == 32);

  const Report bounded = verify(config(Theorem::kCor2_8, "power:0.5", 2));
  const std::string csv8 = emit_plot_data(bounded, "cor2_8");
  CHECK(csv8.rfind("trial,r,value,formula\n", 0) == 0);

  CHECK(code_of([&] { emit_plot_data(fast, "histogram"); }) == ErrorCode::kUnknownKind);
  CHECK(code_of([&] { emit_plot_data(fast, "cor2_8"); }) == ErrorCode::kUnknownKind);
  CHECK(code_of([] { emit_plot_data(Report{}, "eq1_6"); }) == ErrorCode::kEmptyReport);
}
