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

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lagot {

using Point = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kPlanMarginalTol = 1e-10;

struct RawAtom {
  Point x;
  double w = 0.0;
};

// Finitely supported probability measure on R^dim. Points are stored as the
// columns of a dim x n matrix. Instances are only produced by
// validate_measure(), so the invariants (positive weights summing to one,
// distinct points) always hold.
class DiscreteMeasure {
 public:
  Index dim() const { return points_.rows(); }
  Index size() const { return points_.cols(); }

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  auto point(Index i) const { return points_.col(i); }
  double weight(Index i) const { return weights_(i); }

  // Largest |x - y| over x in this support and y in the other's.
  double cross_diameter(const DiscreteMeasure& other) const;

 private:
  DiscreteMeasure(Eigen::MatrixXd points, Eigen::VectorXd weights)
      : points_(std::move(points)), weights_(std::move(weights)) {}

  friend DiscreteMeasure validate_measure(std::span<const RawAtom>, Index);
  friend class Coupling;

  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
};

/// Builds a measure from raw atoms. Atoms with identical coordinates are
/// merged by summing weights, zero-weight atoms are dropped, and the total
/// mass must be one within kWeightSumTol.
DiscreteMeasure validate_measure(std::span<const RawAtom> raw, Index dim);

DiscreteMeasure make_measure(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& weights);

inline DiscreteMeasure dirac(const Point& x) {
  const RawAtom atom{x, 1.0};
  return validate_measure(std::span<const RawAtom>(&atom, 1), x.size());
}

/// Deterministic in `seed`: points uniform in [-box_radius, box_radius]^dim,
/// weights uniform on the simplex.
DiscreteMeasure random_measure(std::uint64_t seed, Index n_atoms, Index dim,
                               double box_radius);

// Same atoms in the same order, coordinates and weights within tol.
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b,
                  double tol);

// Same atom set up to reordering, matched by nearest point within tol.
bool approx_equivalent(const DiscreteMeasure& a, const DiscreteMeasure& b,
                       double tol);

// Transport plan between two measures. Row i carries the mass leaving atom i of
// the source, column j the mass arriving at atom j of the target.
class Coupling {
 public:
  const DiscreteMeasure& source() const { return source_; }
  const DiscreteMeasure& target() const { return target_; }
  const Eigen::MatrixXd& plan() const { return plan_; }

  double mass(Index i, Index j) const { return plan_(i, j); }

 private:
  Coupling(DiscreteMeasure source, DiscreteMeasure target,
           Eigen::MatrixXd plan)
      : source_(std::move(source)),
        target_(std::move(target)),
        plan_(std::move(plan)) {}

  friend Coupling make_coupling(DiscreteMeasure, DiscreteMeasure,
                                Eigen::MatrixXd);

  DiscreteMeasure source_;
  DiscreteMeasure target_;
  Eigen::MatrixXd plan_;
};

/// Throws kInvalidCoupling unless plan is nonnegative with row and column
/// sums matching the two measures within kPlanMarginalTol.
Coupling make_coupling(DiscreteMeasure source, DiscreteMeasure target,
                       Eigen::MatrixXd plan);

Coupling product_coupling(const DiscreteMeasure& source,
                          const DiscreteMeasure& target);

/// Marginals reconstructed from the plan's row and column sums.
std::pair<DiscreteMeasure, DiscreteMeasure> marginals(const Coupling& c);

}  // namespace lagot
