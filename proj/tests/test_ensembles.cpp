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
#include <random>

#include "lagot/ensembles.hpp"
#include "lagot/error.hpp"
#include "lagot/generators.hpp"
#include "test_support.hpp"

using namespace lagot;
using lagot::testing::code_of;
using lagot::testing::measure;
using lagot::testing::pt;

namespace {

TransportEnsemble single(const SteppedPath& p, std::optional<double> bound = std::nullopt) {
  return TransportEnsemble({{1.0, p, bound}});
}

const IntervalSet kHalf({{0.0, 0.5}});

}  // namespace

TEST_CASE("endpoint marginals") {
  auto [a, b] = endpoint_marginals(single(linear_path(pt({0.0}), pt({1.0}))));
  CHECK(approx_equal(a, dirac(pt({0.0})), 0.0));
  CHECK(approx_equal(b, dirac(pt({1.0})), 0.0));

  const TransportEnsemble fork({{0.5, linear_path(pt({0.0}), pt({1.0})), std::nullopt},
                                {0.5, linear_path(pt({0.0}), pt({-1.0})), std::nullopt}});
  auto [c, d] = endpoint_marginals(fork);
  CHECK(approx_equal(c, dirac(pt({0.0})), 0.0));
  CHECK(approx_equivalent(d, measure({{pt({1.0}), 0.5}, {pt({-1.0}), 0.5}}), 1e-15));
}

TEST_CASE("ensemble validation") {
  const SteppedPath p = linear_path(pt({0.0}), pt({1.0}));
  CHECK(code_of([] { TransportEnsemble({}); }) == ErrorCode::kInvalidEnsemble);
  CHECK(code_of([&] { TransportEnsemble({{0.6, p, std::nullopt}}); }) ==
        ErrorCode::kWeightSumMismatch);
  CHECK(code_of([&] { TransportEnsemble({{0.0, p, std::nullopt}, {1.0, p, std::nullopt}}); }) ==
        ErrorCode::kInvalidEnsemble);
  CHECK(code_of([&] { single(fast_path(pt({0.0}), pt({1.0}), 4), 2.0); }) ==
        ErrorCode::kBoundViolated);
  CHECK(code_of([&] {
          TransportEnsemble({{0.5, p, std::nullopt},
                             {0.5, linear_path(pt({0.0, 0.0}), pt({1.0, 0.0})), std::nullopt}});
        }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("eval_tilde examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  CHECK(eval_tilde(single(linear_path(pt({0.0}), pt({1.0}))), sqrt_cost, Modifier::kN1) == 1.0);
  CHECK(eval_tilde(single(stop_and_go(pt({0.0}), pt({1.0}), kHalf)), sqrt_cost, Modifier::kN1) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval_tilde(single(detour_path(pt({0.0, 0.0}), pt({2.0, 0.0}))), builtin("remark_iii"),
                   Modifier::kN2) == doctest::Approx(0.07326255555493671).epsilon(1e-12));
}

TEST_CASE("eval_bounded examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  CHECK(eval_bounded(single(stop_and_go(pt({0.0}), pt({1.0}), kHalf), 2.0), sqrt_cost) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(eval_bounded(single(constant_path(pt({0.0})), 0.0), sqrt_cost) == 0.0);
  CHECK(eval_bounded(single(fast_path(pt({0.0}), pt({1.0}), 4), 4.0), sqrt_cost) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(code_of([&] { eval_bounded(single(constant_path(pt({0.0}))), sqrt_cost); }) ==
        ErrorCode::kMissingBound);
}

TEST_CASE("eval_tv examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  const Coupling c01 = make_coupling(dirac(pt({0.0})), dirac(pt({1.0})),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0));
  CHECK(eval_tv(uniform_bound_triple(c01, 2.0), sqrt_cost) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));

  const DiscreteMeasure m = measure({{pt({0.0}), 0.3}, {pt({1.0}), 0.7}});
  const Coupling id = make_coupling(m, m, Eigen::Matrix2d{{0.3, 0.0}, {0.0, 0.7}});
  for (double bound : {0.0, 0.5, 3.0}) CHECK(eval_tv(uniform_bound_triple(id, bound), sqrt_cost) == 0.0);

  const Coupling c02 = make_coupling(dirac(pt({0.0, 0.0})), dirac(pt({2.0, 0.0})),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0));
  CHECK(eval_tv(uniform_bound_triple(c02, 4.0), builtin("remark_iii")) ==
        doctest::Approx(0.03663127777746836).epsilon(1e-12));
}

TEST_CASE("bounded triple validation") {
  const Coupling c01 = make_coupling(dirac(pt({0.0})), dirac(pt({1.0})),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0));
  CHECK(code_of([&] { uniform_bound_triple(c01, 0.5); }) == ErrorCode::kInfeasibleBound);
  CHECK(code_of([&] { uniform_bound_triple(c01, 0.0); }) == ErrorCode::kInfeasibleBound);
  CHECK(code_of([&] { make_bounded_triple(c01, {{0, 0, 0.5, 2.0}}); }) ==
        ErrorCode::kInvalidCoupling);
  // A finite-support law of caps on one cell.
  const BoundedCouplingTriple mixed = make_bounded_triple(c01, {{0, 0, 0.25, 1.0}, {0, 0, 0.75, 4.0}});
  const CostFunction sqrt_cost = builtin("power", {0.5});
  CHECK(eval_tv(mixed, sqrt_cost) == doctest::Approx(0.25 * 1.0 + 0.75 * 0.5).epsilon(1e-15));
  CHECK(eval_bounded(build_opt_bounded(mixed), sqrt_cost) ==
        doctest::Approx(eval_tv(mixed, sqrt_cost)).epsilon(1e-15));
}

TEST_CASE("build_opt_bounded examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  const Coupling c01 = make_coupling(dirac(pt({0.0})), dirac(pt({1.0})),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0));
  const TransportEnsemble e = build_opt_bounded(uniform_bound_triple(c01, 2.0));
  CHECK(sup_norm(e.members()[0].path) == 2.0);
  CHECK(eval_bounded(e, sqrt_cost) == doctest::Approx(sqrt_cost(2.0) / 2.0).epsilon(1e-15));

  const TransportEnsemble exact = build_opt_bounded(uniform_bound_triple(c01, 1.0));
  CHECK(eval_bounded(exact, sqrt_cost) == sqrt_cost(1.0));

  const Coupling c00 = make_coupling(dirac(pt({0.0})), dirac(pt({0.0})),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0));
  CHECK(eval_bounded(build_opt_bounded(uniform_bound_triple(c00, 0.0)), sqrt_cost) == 0.0);
}

TEST_CASE("build_opt_tilde recovers the transport value") {
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    CAPTURE(trial);
    const DiscreteMeasure m0 = random_measure(trial_seed(51, trial), 1 + trial % 5, 1 + trial % 3, 2.0);
    const DiscreteMeasure m1 = random_measure(trial_seed(52, trial), 1 + trial % 4, 1 + trial % 3, 2.0);
    for (const char* spec : {"power:0.3", "power:0.5", "power:0.9", "remark_iii"}) {
      const CostFunction cost = parse_cost_spec(spec);
      const MKSolution sol = solve_mk(m0, m1, cost);
      const TransportEnsemble full = build_opt_tilde(sol, [](Index, Index) { return IntervalSet::full(); });
      const TransportEnsemble early = build_opt_tilde(sol, [](Index, Index) { return IntervalSet({{0.0, 0.3}}); });
      Rng rng(trial_seed(53, trial));
      const TransportEnsemble random =
          build_opt_tilde(sol, [&](Index, Index) { return random_interval_set(rng, 4, 0.05); });
      for (const TransportEnsemble* e : {&full, &early, &random}) {
        CHECK(std::abs(eval_tilde(*e, cost, Modifier::kN1) - sol.value) <= 1e-10);
        auto [a, b] = endpoint_marginals(*e);
        CHECK(approx_equivalent(a, m0, 1e-10));
        CHECK(approx_equivalent(b, m1, 1e-10));
      }
    }
  }
}

TEST_CASE("oracle examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  const double grid[] = {0.0, 1.0, 2.0, 4.0};
  const OracleResult l1 = oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kL1, 4, grid);
  CHECK(l1.value == doctest::Approx(1.0).epsilon(1e-12));

  const OracleResult capped =
      oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kPlain, 4, grid, 2.0);
  CHECK(capped.value == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

  const double wide[] = {1.0, 2.0, 4.0, 8.0};
  const OracleResult fast = oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kPlain, 8, wide);
  CHECK(fast.value == doctest::Approx(std::sqrt(8.0) / 8.0).epsilon(1e-12));

  // Fewer large speeds give worse minima.
  const double narrow[] = {1.0, 2.0, 4.0};
  CHECK(oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kPlain, 8, narrow).value >
        fast.value);

  const double only_three[] = {3.0};
  CHECK(code_of([&] {
          oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kPlain, 2, only_three);
        }) == ErrorCode::kNoFeasiblePath);
  CHECK(code_of([&] {
          oracle_min_path(pt({0.0}), pt({1.0}), sqrt_cost, Objective::kPlain, 9, grid);
        }) == ErrorCode::kBadParam);
  CHECK(parse_objective("L2") == Objective::kL2);
  CHECK(to_string(Objective::kScaled1) == "S1");
  CHECK(code_of([] { parse_objective("L3"); }) == ErrorCode::kBadParam);
}

TEST_CASE("oracle never beats the direct cost under L1") {
  const double grid[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(trial_seed(61, trial));
    const Point x = random_point(rng, 2, 2.0);
    const Point y = random_point(rng, 2, 2.0);
    for (const char* spec : {"power:0.3", "power:0.5", "remark_iii", "affine_exp:0.3"}) {
      const CostFunction cost = parse_cost_spec(spec);
      const double direct = cost((y - x).norm());
      CHECK(oracle_min_path(x, y, cost, Objective::kL1, 4, grid).value >= direct - 1e-9);
    }
  }
}

TEST_CASE("solve_bounded examples") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  const DiscreteMeasure a = dirac(pt({0.0, 0.0}));
  const DiscreteMeasure b = dirac(pt({2.0, 0.0}));
  CHECK(solve_bounded(a, b, sqrt_cost, 4.0).value == doctest::Approx(1.0).epsilon(1e-12));
  const BoundedSolution two = solve_bounded(a, b, sqrt_cost, 2.0);
  CHECK(two.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(eval_bounded(two.ensemble, sqrt_cost) == doctest::Approx(two.value).epsilon(1e-12));
  CHECK(code_of([&] { solve_bounded(a, b, sqrt_cost, 1.0); }) == ErrorCode::kInfeasible);

  const DiscreteMeasure m = random_measure(3, 4, 2, 1.0);
  CHECK(solve_bounded(m, m, sqrt_cost, 0.5).value == 0.0);
}

TEST_CASE("random admissible ensembles cost at least eval_tv") {
  const CostFunction sqrt_cost = builtin("power", {0.5});
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    CAPTURE(trial);
    Rng rng(trial_seed(71, trial));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Member> members;
    const int count = 1 + static_cast<int>(trial % 4);
    for (int k = 0; k < count; ++k) {
      const Point x = random_point(rng, 2, 1.0);
      const Point y = random_point(rng, 2, 1.0);
      const SteppedPath p = random_path_between(rng, x, y, 4, 6.0);
      const double bound = sup_norm(p) * (1.0 + unit(rng));
      members.push_back({1.0 / count, p, bound});
    }
    const TransportEnsemble e(members);
    CHECK(eval_bounded(e, sqrt_cost) >= eval_tv(induced_triple(e), sqrt_cost) - 1e-10);
  }
}
