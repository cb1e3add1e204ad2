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

#include <random>

#include "lagot/error.hpp"
#include "lagot/generators.hpp"
#include "lagot/measures.hpp"
#include "test_support.hpp"

using namespace lagot;
using lagot::testing::code_of;
using lagot::testing::pt;

TEST_CASE("validate_measure: single atom") {
  const RawAtom atom{pt({0.0}), 1.0};
  const DiscreteMeasure m = validate_measure({&atom, 1}, 1);
  CHECK(m.size() == 1);
  CHECK(m.dim() == 1);
  CHECK(m.weight(0) == 1.0);
  CHECK(m.point(0)(0) == 0.0);
}

TEST_CASE("validate_measure: duplicate points merge") {
  const std::vector<RawAtom> raw{{pt({0.0}), 0.5}, {pt({0.0}), 0.5}};
  const DiscreteMeasure m = validate_measure(raw, 1);
  CHECK(m.size() == 1);
  CHECK(m.weight(0) == 1.0);
}

TEST_CASE("validate_measure: errors") {
  const std::vector<RawAtom> short_mass{{pt({0.0}), 0.5}, {pt({1.0}), 0.49}};
  CHECK(code_of([&] { validate_measure(short_mass, 1); }) ==
        ErrorCode::kWeightSumMismatch);
  CHECK(code_of([&] { validate_measure({}, 1); }) == ErrorCode::kEmptyMeasure);
  const std::vector<RawAtom> mixed{{pt({0.0}), 0.5}, {pt({1.0, 2.0}), 0.5}};
  CHECK(code_of([&] { validate_measure(mixed, 1); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("validate_measure is idempotent") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DiscreteMeasure m = random_measure(seed, 1 + seed % 6, 1 + seed % 3, 2.0);
    const DiscreteMeasure again = make_measure(m.points(), m.weights());
    CHECK(approx_equal(m, again, 0.0));
  }
}

TEST_CASE("marginals of simple couplings") {
  using lagot::testing::measure;
  const DiscreteMeasure half = measure({{pt({0.0}), 0.5}, {pt({1.0}), 0.5}});

  SUBCASE("identity plan") {
    const Coupling c = make_coupling(half, half, Eigen::Matrix2d{{0.5, 0.0}, {0.0, 0.5}});
    auto [a, b] = marginals(c);
    CHECK(approx_equal(a, half, 1e-15));
    CHECK(approx_equal(b, half, 1e-15));
  }
  SUBCASE("everything into one point") {
    const DiscreteMeasure two = dirac(pt({2.0}));
    Eigen::MatrixXd plan(2, 1);
    plan << 0.5, 0.5;
    const Coupling c = make_coupling(half, two, plan);
    auto [a, b] = marginals(c);
    CHECK(approx_equal(a, half, 1e-15));
    CHECK(approx_equal(b, two, 1e-15));
  }
  SUBCASE("product plan") {
    auto [a, b] = marginals(product_coupling(half, half));
    CHECK(approx_equal(a, half, 1e-15));
    CHECK(approx_equal(b, half, 1e-15));
  }
}

TEST_CASE("make_coupling rejects bad plans") {
  const DiscreteMeasure d0 = dirac(pt({0.0}));
  const DiscreteMeasure d1 = dirac(pt({1.0}));
  CHECK(code_of([&] { make_coupling(d0, d1, Eigen::MatrixXd::Constant(1, 1, 0.9)); }) ==
        ErrorCode::kInvalidCoupling);
  CHECK(code_of([&] { make_coupling(d0, d1, Eigen::MatrixXd::Constant(1, 1, -1.0)); }) ==
        ErrorCode::kInvalidCoupling);
  CHECK(code_of([&] { make_coupling(d0, d1, Eigen::MatrixXd::Constant(2, 1, 0.5)); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("marginals reproduce random couplings") {
  // Random plans: product plan with a signed perturbation on a 2x2 minor that
  // keeps row and column sums.
  Rng rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const DiscreteMeasure m0 = random_measure(trial_seed(1, trial), 2 + trial % 4, 2, 1.0);
    const DiscreteMeasure m1 = random_measure(trial_seed(2, trial), 2 + trial % 3, 2, 1.0);
    Eigen::MatrixXd plan = m0.weights() * m1.weights().transpose();
    const double room = std::min({plan(0, 1), plan(1, 0)});
    const double eps = room * unit(rng);
    plan(0, 0) += eps;
    plan(1, 1) += eps;
    plan(0, 1) -= eps;
    plan(1, 0) -= eps;
    const Coupling c = make_coupling(m0, m1, plan);
    auto [a, b] = marginals(c);
    CHECK(approx_equal(a, m0, 1e-10));
    CHECK(approx_equal(b, m1, 1e-10));
  }
}

TEST_CASE("random_measure postconditions") {
  const DiscreteMeasure single = random_measure(3, 1, 1, 1.0);
  CHECK(single.size() == 1);
  CHECK(single.weight(0) == 1.0);

  CHECK(approx_equal(random_measure(42, 5, 3, 2.0), random_measure(42, 5, 3, 2.0), 0.0));

  const DiscreteMeasure m = random_measure(9, 5, 3, 2.0);
  CHECK(m.size() == 5);
  CHECK(m.dim() == 3);
  CHECK(m.points().cwiseAbs().maxCoeff() <= 2.0);
  CHECK(std::abs(m.weights().sum() - 1.0) <= kWeightSumTol);
  CHECK(m.weights().minCoeff() > 0.0);
}
