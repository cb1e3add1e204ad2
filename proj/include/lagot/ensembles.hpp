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

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lagot/costs.hpp"
#include "lagot/measures.hpp"
#include "lagot/mk_solver.hpp"
#include "lagot/paths.hpp"

namespace lagot {

struct Member {
  double weight = 0.0;
  SteppedPath path;
  std::optional<double> bound;  // speed cap M, when the member carries one
};

// Weighted finite family of paths; the weights play the role of the
// probabilities of a random path.
class TransportEnsemble {
 public:
  explicit TransportEnsemble(std::vector<Member> members);

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Member> members_;
};

// sup|v| <= M up to a relative 1e-12.
bool within_bound(double speed, double bound);

// One cell of a plan together with a speed cap. A plan cell may be split
// across several entries with different caps, which is how a random cap with
// a finite-support law is represented.
struct BoundedCell {
  Index i = 0;
  Index j = 0;
  double mass = 0.0;
  double bound = 0.0;
};

class BoundedCouplingTriple {
 public:
  const Coupling& coupling() const { return coupling_; }
  const std::vector<BoundedCell>& cells() const { return cells_; }

 private:
  BoundedCouplingTriple(Coupling c, std::vector<BoundedCell> cells)
      : coupling_(std::move(c)), cells_(std::move(cells)) {}

  friend BoundedCouplingTriple make_bounded_triple(Coupling,
                                                   std::vector<BoundedCell>);

  Coupling coupling_;
  std::vector<BoundedCell> cells_;
};

/// Checks that the cell masses add up to the plan (within kPlanMarginalTol)
/// and that every cap covers its displacement; kInfeasibleBound otherwise.
BoundedCouplingTriple make_bounded_triple(Coupling c,
                                          std::vector<BoundedCell> cells);

/// Cap `bound` on every positive-mass cell of the plan.
BoundedCouplingTriple uniform_bound_triple(Coupling c, double bound);

std::pair<DiscreteMeasure, DiscreteMeasure> endpoint_marginals(
    const TransportEnsemble& e);

double eval_plain(const TransportEnsemble& e, const CostFunction& cost);
double eval_tilde(const TransportEnsemble& e, const CostFunction& cost,
                  Modifier i);
double eval_bounded(const TransportEnsemble& e, const CostFunction& cost);
double eval_tv(const BoundedCouplingTriple& t, const CostFunction& cost);

/// Coupling of start and end points, with each member's cap on its cell.
BoundedCouplingTriple induced_triple(const TransportEnsemble& e);

using SetGenerator = std::function<IntervalSet(Index, Index)>;

/// One stop-and-go member per positive-mass cell, moving on set_gen(i, j).
TransportEnsemble build_opt_tilde(const MKSolution& sol,
                                  const SetGenerator& set_gen);

/// Per cell: rest after moving at speed M over [0, |x - y| / M].
TransportEnsemble build_opt_bounded(const BoundedCouplingTriple& t);

enum class Objective { kPlain, kL1, kL2, kScaled1, kScaled2 };

std::string_view to_string(Objective o);
Objective parse_objective(std::string_view name);

double path_objective(const SteppedPath& p, const CostFunction& cost,
                      Objective o);

struct OracleResult {
  double value = 0.0;
  // Signed speeds along (y - x)/|y - x| of a minimizing assignment, sorted.
  std::vector<double> speeds;
};

/// Exhaustive minimum over K equal-duration pieces moving along the line
/// through x and y, with signed speeds drawn from speed_grid * |y - x|.
/// Every objective is invariant under reordering the pieces, so the search
/// runs over multisets of speeds. Only assignments reaching y are admitted.
OracleResult oracle_min_path(const Point& x, const Point& y,
                             const CostFunction& cost, Objective objective,
                             int pieces, std::span<const double> speed_grid,
                             std::optional<double> cap = std::nullopt);

struct BoundedSolution {
  double value = 0.0;
  double constrained_t1 = 0.0;  // min E|X1 - X0| over plans with |X1-X0| <= r
  BoundedCouplingTriple triple;
  TransportEnsemble ensemble;
};

/// Speed cap fixed at r for every path. Arcs longer than r are removed from
/// the linear-cost transport problem.
BoundedSolution solve_bounded(const DiscreteMeasure& m0,
                              const DiscreteMeasure& m1,
                              const CostFunction& cost, double r);

}  // namespace lagot
