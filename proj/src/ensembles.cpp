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

#include "lagot/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lagot/error.hpp"

namespace lagot {

namespace {

// Path endpoints are sums of pieces and carry rounding; points this close are
// treated as the same atom.
constexpr double kEndpointTol = 1e-12;

bool same_endpoint(const Point& a, const Point& b) {
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() <= kEndpointTol * scale;
}

Index find_atom(const DiscreteMeasure& m, const Point& x) {
  for (Index k = 0; k < m.size(); ++k) {
    if (same_endpoint(m.point(k), x)) return k;
  }
  throw Error(ErrorCode::kInvalidEnsemble, "endpoint missing from marginal");
}

void add_endpoint(std::vector<RawAtom>& atoms, const Point& x, double w) {
  for (RawAtom& a : atoms) {
    if (same_endpoint(a.x, x)) {
      a.w += w;
      return;
    }
  }
  atoms.push_back({x, w});
}

}  // namespace

TransportEnsemble::TransportEnsemble(std::vector<Member> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorCode::kInvalidEnsemble, "ensemble has no members");
  }
  const Index dim = members_.front().path.dim();
  double total = 0.0;
  for (const Member& m : members_) {
    if (!(m.weight > 0.0 && m.weight <= 1.0 + kWeightSumTol)) {
      throw Error(ErrorCode::kInvalidEnsemble, "member weights must be in (0,1]");
    }
    if (m.path.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "ensemble members differ in dimension");
    }
    if (m.bound) {
      if (!(*m.bound >= 0.0) || !std::isfinite(*m.bound)) {
        throw Error(ErrorCode::kInvalidEnsemble, "bounds must be finite, >= 0");
      }
      if (!within_bound(sup_norm(m.path), *m.bound)) {
        std::ostringstream msg;
        msg << "path speed " << sup_norm(m.path) << " exceeds bound "
            << *m.bound;
        throw Error(ErrorCode::kBoundViolated, msg.str());
      }
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "member weights sum to " << total;
    throw Error(ErrorCode::kWeightSumMismatch, msg.str());
  }
}

bool within_bound(double speed, double bound) {
  return speed <= bound + 1e-12 * std::max(1.0, bound);
}

BoundedCouplingTriple make_bounded_triple(Coupling c,
                                          std::vector<BoundedCell> cells) {
  const DiscreteMeasure& src = c.source();
  const DiscreteMeasure& dst = c.target();
  Eigen::MatrixXd covered = Eigen::MatrixXd::Zero(src.size(), dst.size());
  for (const BoundedCell& cell : cells) {
    if (cell.i < 0 || cell.i >= src.size() || cell.j < 0 ||
        cell.j >= dst.size()) {
      throw Error(ErrorCode::kInvalidCoupling, "cell index out of range");
    }
    if (!(cell.mass > 0.0) || !(cell.bound >= 0.0) ||
        !std::isfinite(cell.bound)) {
      throw Error(ErrorCode::kInvalidCoupling,
                  "cells need positive mass and a finite bound >= 0");
    }
    const double gap = (src.point(cell.i) - dst.point(cell.j)).norm();
    const bool ok = cell.bound == 0.0 ? gap == 0.0 : within_bound(gap, cell.bound);
    if (!ok) {
      std::ostringstream msg;
      msg << "cell (" << cell.i << ", " << cell.j << ") moves " << gap
          << " under bound " << cell.bound;
      throw Error(ErrorCode::kInfeasibleBound, msg.str());
    }
    covered(cell.i, cell.j) += cell.mass;
  }
  if ((covered - c.plan()).cwiseAbs().maxCoeff() > kPlanMarginalTol) {
    throw Error(ErrorCode::kInvalidCoupling,
                "cell masses do not add up to the plan");
  }
  return BoundedCouplingTriple(std::move(c), std::move(cells));
}

BoundedCouplingTriple uniform_bound_triple(Coupling c, double bound) {
  std::vector<BoundedCell> cells;
  const Eigen::MatrixXd& plan = c.plan();
  for (Index i = 0; i < plan.rows(); ++i) {
    for (Index j = 0; j < plan.cols(); ++j) {
      if (plan(i, j) > 0.0) cells.push_back({i, j, plan(i, j), bound});
    }
  }
  return make_bounded_triple(std::move(c), std::move(cells));
}

std::pair<DiscreteMeasure, DiscreteMeasure> endpoint_marginals(
    const TransportEnsemble& e) {
  std::vector<RawAtom> starts;
  std::vector<RawAtom> ends;
  for (const Member& m : e.members()) {
    add_endpoint(starts, m.path.start(), m.weight);
    add_endpoint(ends, m.path.end_point(), m.weight);
  }
  const Index dim = e.members().front().path.dim();
  return {validate_measure(starts, dim), validate_measure(ends, dim)};
}

double eval_plain(const TransportEnsemble& e, const CostFunction& cost) {
  double total = 0.0;
  for (const Member& m : e.members()) total += m.weight * cost_plain(m.path, cost);
  return total;
}

double eval_tilde(const TransportEnsemble& e, const CostFunction& cost,
                  Modifier i) {
  double total = 0.0;
  for (const Member& m : e.members()) {
    total += m.weight * cost_li(m.path, cost, i);
  }
  return total;
}

double eval_bounded(const TransportEnsemble& e, const CostFunction& cost) {
  for (const Member& m : e.members()) {
    if (!m.bound) {
      throw Error(ErrorCode::kMissingBound, "member without a speed bound");
    }
    if (!within_bound(sup_norm(m.path), *m.bound)) {
      throw Error(ErrorCode::kBoundViolated, "member exceeds its speed bound");
    }
  }
  return eval_plain(e, cost);
}

double eval_tv(const BoundedCouplingTriple& t, const CostFunction& cost) {
  const DiscreteMeasure& src = t.coupling().source();
  const DiscreteMeasure& dst = t.coupling().target();
  double total = 0.0;
  for (const BoundedCell& cell : t.cells()) {
    if (!(cell.bound > 0.0)) continue;
    const double gap = (src.point(cell.i) - dst.point(cell.j)).norm();
    total += cell.mass * (cost(cell.bound) / cell.bound) * gap;
  }
  return total;
}

BoundedCouplingTriple induced_triple(const TransportEnsemble& e) {
  auto [m0, m1] = endpoint_marginals(e);
  Eigen::MatrixXd plan = Eigen::MatrixXd::Zero(m0.size(), m1.size());
  std::vector<BoundedCell> cells;
  for (const Member& m : e.members()) {
    if (!m.bound) {
      throw Error(ErrorCode::kMissingBound, "member without a speed bound");
    }
    const Index i = find_atom(m0, m.path.start());
    const Index j = find_atom(m1, m.path.end_point());
    plan(i, j) += m.weight;
    cells.push_back({i, j, m.weight, *m.bound});
  }
  return make_bounded_triple(
      make_coupling(std::move(m0), std::move(m1), std::move(plan)),
      std::move(cells));
}

TransportEnsemble build_opt_tilde(const MKSolution& sol,
                                  const SetGenerator& set_gen) {
  const Coupling& c = sol.plan;
  std::vector<Member> members;
  for (Index i = 0; i < c.plan().rows(); ++i) {
    for (Index j = 0; j < c.plan().cols(); ++j) {
      const double mass = c.mass(i, j);
      if (!(mass > 0.0)) continue;
      members.push_back({mass,
                         stop_and_go(c.source().point(i), c.target().point(j),
                                     set_gen(i, j)),
                         std::nullopt});
    }
  }
  return TransportEnsemble(std::move(members));
}

TransportEnsemble build_opt_bounded(const BoundedCouplingTriple& t) {
  const DiscreteMeasure& src = t.coupling().source();
  const DiscreteMeasure& dst = t.coupling().target();
  std::vector<Member> members;
  for (const BoundedCell& cell : t.cells()) {
    const Point x = src.point(cell.i);
    const Point y = dst.point(cell.j);
    const double gap = (y - x).norm();
    if (gap == 0.0) {
      members.push_back({cell.mass, constant_path(x), cell.bound});
      continue;
    }
    if (!(cell.bound > 0.0) || !within_bound(gap, cell.bound)) {
      throw Error(ErrorCode::kInfeasibleBound, "displacement exceeds bound");
    }
    const double active = std::min(1.0, gap / cell.bound);
    members.push_back(
        {cell.mass, stop_and_go(x, y, IntervalSet({{0.0, active}})), cell.bound});
  }
  return TransportEnsemble(std::move(members));
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::kPlain: return "plain";
    case Objective::kL1: return "L1";
    case Objective::kL2: return "L2";
    case Objective::kScaled1: return "S1";
    case Objective::kScaled2: return "S2";
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  for (Objective o : {Objective::kPlain, Objective::kL1, Objective::kL2,
                      Objective::kScaled1, Objective::kScaled2}) {
    if (name == to_string(o)) return o;
  }
  throw Error(ErrorCode::kBadParam, "unknown objective '" + std::string(name) + "'");
}

double path_objective(const SteppedPath& p, const CostFunction& cost,
                      Objective o) {
  switch (o) {
    case Objective::kPlain: return cost_plain(p, cost);
    case Objective::kL1: return cost_li(p, cost, Modifier::kN1);
    case Objective::kL2: return cost_li(p, cost, Modifier::kN2);
    case Objective::kScaled1: return cost_scaled(p, cost, Modifier::kN1);
    case Objective::kScaled2: return cost_scaled(p, cost, Modifier::kN2);
  }
  return 0.0;
}

OracleResult oracle_min_path(const Point& x, const Point& y,
                             const CostFunction& cost, Objective objective,
                             int pieces, std::span<const double> speed_grid,
                             std::optional<double> cap) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "endpoints differ in dimension");
  }
  if (pieces < 1 || pieces > 8) {
    throw Error(ErrorCode::kBadParam, "oracle piece count must be in [1, 8]");
  }
  if (speed_grid.empty() || speed_grid.size() > 6) {
    throw Error(ErrorCode::kBadParam, "oracle speed grid needs 1..6 entries");
  }
  const double gap = (y - x).norm();
  const Point dir = gap > 0.0 ? Point((y - x) / gap) : Point::Zero(x.size());

  std::vector<double> speeds{0.0};
  for (double g : speed_grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw Error(ErrorCode::kBadParam, "speed grid entries must be >= 0");
    }
    const double s = g * gap;
    if (!(s > 0.0)) continue;
    if (cap && !within_bound(s, *cap)) continue;
    speeds.push_back(s);
    speeds.push_back(-s);
  }
  std::sort(speeds.begin(), speeds.end());
  speeds.erase(std::unique(speeds.begin(), speeds.end()), speeds.end());

  const double dt = 1.0 / pieces;
  const double reach_tol = 1e-12 * std::max(1.0, gap);
  OracleResult best{std::numeric_limits<double>::infinity(), {}};
  std::vector<std::size_t> pick(static_cast<std::size_t>(pieces), 0);
  while (true) {
    double sum = 0.0;
    for (std::size_t k : pick) sum += speeds[k];
    if (std::abs(sum * dt - gap) <= reach_tol) {
      std::vector<Piece> steps;
      steps.reserve(pick.size());
      for (std::size_t k : pick) steps.push_back({dt, speeds[k] * dir});
      const double value =
          path_objective(SteppedPath(x, std::move(steps)), cost, objective);
      if (value < best.value) {
        best.value = value;
        best.speeds.clear();
        for (std::size_t k : pick) best.speeds.push_back(speeds[k]);
      }
    }
    // Next nondecreasing index tuple.
    int pos = pieces - 1;
    while (pos >= 0 && pick[pos] + 1 == speeds.size()) --pos;
    if (pos < 0) break;
    const std::size_t next = pick[pos] + 1;
    for (int k = pos; k < pieces; ++k) pick[k] = next;
  }
  if (best.speeds.empty()) {
    throw Error(ErrorCode::kNoFeasiblePath,
                "no speed assignment on the grid reaches the endpoint");
  }
  return best;
}

BoundedSolution solve_bounded(const DiscreteMeasure& m0,
                              const DiscreteMeasure& m1,
                              const CostFunction& cost, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kBadParam, "speed cap r must be positive");
  }
  const ArcFilter too_long = [&](Index i, Index j) {
    return !within_bound((m0.point(i) - m1.point(j)).norm(), r);
  };
  MKSolution sol = solve_mk(m0, m1, builtin("linear"), too_long);
  const double value = (cost(r) / r) * sol.value;
  BoundedCouplingTriple triple = uniform_bound_triple(sol.plan, r);
  TransportEnsemble ensemble = build_opt_bounded(triple);
  return BoundedSolution{value, sol.value, std::move(triple),
                         std::move(ensemble)};
}

}  // namespace lagot
