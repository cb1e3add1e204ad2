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

#include "lagot/paths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagot/error.hpp"

namespace lagot {

namespace {

void require_unit_horizon(const SteppedPath& p, const char* what) {
  if (std::abs(p.horizon() - 1.0) > kHorizonTol) {
    std::ostringstream msg;
    msg << what << " needs horizon 1, got " << p.horizon();
    throw Error(ErrorCode::kBadHorizon, msg.str());
  }
}

double modifier(const SteppedPath& p, Modifier i) {
  return i == Modifier::kN1 ? n1(p) : n2(p);
}

void require_same_dim(const Point& x, const Point& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "endpoints differ in dimension");
  }
}

}  // namespace

SteppedPath::SteppedPath(Point start, std::vector<Piece> pieces, double horizon)
    : start_(std::move(start)), pieces_(std::move(pieces)), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw Error(ErrorCode::kBadHorizon, "horizon must be positive and finite");
  }
  if (start_.size() < 1 || !start_.allFinite()) {
    throw Error(ErrorCode::kInvalidPath, "start must be a finite point");
  }
  double total = 0.0;
  for (const Piece& piece : pieces_) {
    if (!(piece.duration >= 0.0) || !std::isfinite(piece.duration)) {
      throw Error(ErrorCode::kInvalidPath, "piece durations must be >= 0");
    }
    if (piece.velocity.size() != start_.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "velocity dimension differs from start");
    }
    if (!piece.velocity.allFinite()) {
      throw Error(ErrorCode::kInvalidPath, "velocities must be finite");
    }
    total += piece.duration;
  }
  if (std::abs(total - horizon_) > kHorizonTol * std::max(1.0, horizon_)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "durations sum to " << total << ", horizon is " << horizon_;
    throw Error(ErrorCode::kInvalidPath, msg.str());
  }
}

Point SteppedPath::displacement() const {
  Point d = Point::Zero(dim());
  for (const Piece& piece : pieces_) d += piece.duration * piece.velocity;
  return d;
}

Point SteppedPath::position(double t) const {
  t = std::clamp(t, 0.0, horizon_);
  Point x = start_;
  double elapsed = 0.0;
  for (const Piece& piece : pieces_) {
    const double step = std::min(piece.duration, t - elapsed);
    if (step <= 0.0) break;
    x += step * piece.velocity;
    elapsed += piece.duration;
  }
  return x;
}

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals)
    : intervals_(std::move(intervals)) {
  double cursor = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (!(a >= cursor) || !(a < b) || !(b <= 1.0)) {
      std::ostringstream msg;
      msg << "interval (" << a << ", " << b
          << ") is empty, unsorted, overlapping, or outside [0,1]";
      throw Error(ErrorCode::kInvalidIntervalSet, msg.str());
    }
    cursor = b;
  }
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const auto& [a, b] : intervals_) total += b - a;
  return total;
}

double IntervalSet::measure_upto(double t) const {
  double total = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (t <= a) break;
    total += std::min(b, t) - a;
  }
  return total;
}

double sup_norm(const SteppedPath& p) {
  double best = 0.0;
  for (const Piece& piece : p.pieces()) {
    if (piece.duration > 0.0) best = std::max(best, piece.velocity.norm());
  }
  return best;
}

double l1_norm(const SteppedPath& p) {
  double total = 0.0;
  for (const Piece& piece : p.pieces()) {
    total += piece.duration * piece.velocity.norm();
  }
  return total;
}

double n1(const SteppedPath& p) {
  const double disp = p.displacement().norm();
  if (disp == 0.0) return 1.0;
  return p.horizon() * sup_norm(p) / disp;
}

double n2(const SteppedPath& p) {
  const double l1 = l1_norm(p);
  if (!(l1 > 0.0)) return 1.0;
  return p.horizon() * sup_norm(p) / l1;
}

bool is_closed_loop(const SteppedPath& p) {
  return p.displacement().norm() == 0.0 && l1_norm(p) > 0.0;
}

double cost_plain(const SteppedPath& p, const CostFunction& cost) {
  double total = 0.0;
  for (const Piece& piece : p.pieces()) {
    total += piece.duration * cost(piece.velocity.norm());
  }
  return total;
}

double cost_li(const SteppedPath& p, const CostFunction& cost, Modifier i) {
  require_unit_horizon(p, "cost_li");
  const double n = modifier(p, i);
  double total = 0.0;
  for (const Piece& piece : p.pieces()) {
    total += piece.duration * cost(piece.velocity.norm() / n);
  }
  return n * total;
}

double cost_scaled(const SteppedPath& p, const CostFunction& cost, Modifier i) {
  require_unit_horizon(p, "cost_scaled");
  const double n = modifier(p, i);
  double total = 0.0;
  for (const Piece& piece : p.pieces()) {
    total += piece.duration * cost(n * piece.velocity.norm());
  }
  return total / n;
}

SteppedPath constant_path(const Point& x, double horizon) {
  return SteppedPath(x, {{horizon, Point::Zero(x.size())}}, horizon);
}

SteppedPath linear_path(const Point& x, const Point& y) {
  require_same_dim(x, y);
  return SteppedPath(x, {{1.0, y - x}});
}

SteppedPath stop_and_go(const Point& x, const Point& y, const IntervalSet& a) {
  require_same_dim(x, y);
  if (x == y) return constant_path(x);
  const double len = a.measure();
  if (!(len > 0.0)) {
    throw Error(ErrorCode::kDegenerateSet,
                "moving between distinct points needs |A| > 0");
  }
  const Point v = (y - x) / len;
  const Point rest = Point::Zero(x.size());
  std::vector<Piece> pieces;
  double cursor = 0.0;
  for (const auto& [lo, hi] : a.intervals()) {
    if (lo > cursor) pieces.push_back({lo - cursor, rest});
    pieces.push_back({hi - lo, v});
    cursor = hi;
  }
  if (cursor < 1.0) pieces.push_back({1.0 - cursor, rest});
  return SteppedPath(x, std::move(pieces));
}

SteppedPath fast_path(const Point& x, const Point& y, int n) {
  require_same_dim(x, y);
  if (n < 1) throw Error(ErrorCode::kBadParam, "fast_path needs n >= 1");
  if (n == 1) return linear_path(x, y);
  const double dt = 1.0 / n;
  return SteppedPath(x, {{dt, static_cast<double>(n) * (y - x)},
                         {1.0 - dt, Point::Zero(x.size())}});
}

Point detour_apex(const Point& x0, const Point& x1) {
  require_same_dim(x0, x1);
  if (x0.size() < 2) {
    throw Error(ErrorCode::kDimensionTooSmall, "detour needs dim >= 2");
  }
  const Point delta = x1 - x0;
  const double len = delta.norm();
  if (!(len > 0.0)) {
    throw Error(ErrorCode::kCoincidentPoints, "detour endpoints coincide");
  }
  const Point dir = delta / len;
  Point normal;
  for (Index k = 0; k < x0.size(); ++k) {
    Point e = -dir(k) * dir;
    e(k) += 1.0;
    if (e.norm() > 1e-8) {
      normal = e.normalized();
      break;
    }
  }
  const double c = 1.0 + len / 2.0;
  const double height = std::sqrt(c * c - len * len / 4.0);
  return (x0 + x1) / 2.0 + height * normal;
}

SteppedPath detour_path(const Point& x0, const Point& x1) {
  const Point apex = detour_apex(x0, x1);
  return SteppedPath(x0, {{0.5, 2.0 * (apex - x0)}, {0.5, 2.0 * (x1 - apex)}});
}

SteppedPath stretch(const SteppedPath& p, double factor) {
  require_unit_horizon(p, "stretch");
  if (!(factor >= 1.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kBadHorizon, "stretch factor must be >= 1");
  }
  std::vector<Piece> pieces;
  pieces.reserve(p.pieces().size());
  for (const Piece& piece : p.pieces()) {
    pieces.push_back({piece.duration * factor, piece.velocity / factor});
  }
  return SteppedPath(p.start(), std::move(pieces), factor);
}

SteppedPath compress(const SteppedPath& q) {
  const double factor = q.horizon();
  if (!(factor >= 1.0)) {
    throw Error(ErrorCode::kBadHorizon, "compress needs horizon >= 1");
  }
  std::vector<Piece> pieces;
  pieces.reserve(q.pieces().size());
  for (const Piece& piece : q.pieces()) {
    pieces.push_back({piece.duration / factor, piece.velocity * factor});
  }
  return SteppedPath(q.start(), std::move(pieces), 1.0);
}

}  // namespace lagot
