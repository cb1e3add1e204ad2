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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lagot/costs.hpp"
#include "lagot/measures.hpp"

namespace lagot {

inline constexpr double kHorizonTol = 1e-12;

struct Piece {
  double duration = 0.0;
  Point velocity;
};

// Absolutely continuous path on [0, horizon] whose velocity is constant on
// consecutive pieces. Zero-duration pieces are allowed and ignored by every
// essential-sup or integral quantity.
class SteppedPath {
 public:
  SteppedPath(Point start, std::vector<Piece> pieces, double horizon = 1.0);

  const Point& start() const { return start_; }
  double horizon() const { return horizon_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  Index dim() const { return start_.size(); }

  // Integral of the velocity over the whole horizon.
  Point displacement() const;
  Point end_point() const { return start_ + displacement(); }
  Point position(double t) const;

 private:
  Point start_;
  std::vector<Piece> pieces_;
  double horizon_;
};

// Finite union of disjoint subintervals of [0,1], sorted by left endpoint.
// Adjacent intervals may touch.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> intervals);

  static IntervalSet full() { return IntervalSet({{0.0, 1.0}}); }

  const std::vector<std::pair<double, double>>& intervals() const {
    return intervals_;
  }
  double measure() const;
  double measure_upto(double t) const;

 private:
  std::vector<std::pair<double, double>> intervals_;
};

double sup_norm(const SteppedPath& p);
double l1_norm(const SteppedPath& p);

// horizon * sup|v| / |displacement|, or 1 when the displacement vanishes.
double n1(const SteppedPath& p);
// horizon * sup|v| / l1_norm, or 1 when the path never moves.
double n2(const SteppedPath& p);

// Displacement zero but l1_norm positive: N1 = 1 by convention although the
// path moves, so its modified cost is not comparable with N2.
bool is_closed_loop(const SteppedPath& p);

double cost_plain(const SteppedPath& p, const CostFunction& cost);

enum class Modifier { kN1 = 1, kN2 = 2 };

/// N * sum dt * l(|v| / N) with N = n1(p) or n2(p). Needs horizon 1.
double cost_li(const SteppedPath& p, const CostFunction& cost, Modifier i);

/// sum dt * l(N |v|) / N, the modified objective used for convex costs.
double cost_scaled(const SteppedPath& p, const CostFunction& cost, Modifier i);

SteppedPath constant_path(const Point& x, double horizon = 1.0);
SteppedPath linear_path(const Point& x, const Point& y);

/// Moves from x to y at velocity (y - x)/|A| on A and rests elsewhere.
/// Returns the constant path when x == y.
SteppedPath stop_and_go(const Point& x, const Point& y, const IntervalSet& a);

/// Velocity n (y - x) on [0, 1/n], then rest.
SteppedPath fast_path(const Point& x, const Point& y, int n);

/// Two legs of duration 1/2 through an apex at distance 1 + |y - x|/2 from
/// both endpoints, so the speed is constant. The apex sits above the
/// midpoint along the first standard direction not parallel to y - x.
SteppedPath detour_path(const Point& x0, const Point& x1);
Point detour_apex(const Point& x0, const Point& x1);

/// Time change t -> t / factor onto [0, factor]: durations scale by factor,
/// velocities by 1/factor. Needs horizon 1 and factor >= 1.
SteppedPath stretch(const SteppedPath& p, double factor);
/// Inverse of stretch: maps a horizon T >= 1 path back onto [0,1].
SteppedPath compress(const SteppedPath& q);

}  // namespace lagot
