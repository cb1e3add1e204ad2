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
#include <string_view>

#include <Eigen/Dense>

#include "lagot/costs.hpp"
#include "lagot/measures.hpp"

namespace lagot {

// Predicate on (source atom, target atom); true removes the arc.
using ArcFilter = std::function<bool(Index, Index)>;

enum class SolveMethod { kLp, kBruteForce };

std::string_view to_string(SolveMethod m);

struct TransportResult {
  Eigen::MatrixXd plan;
  double value = 0.0;
};

/// Exact minimum-cost transportation plan for a dense cost matrix, by
/// successive shortest augmenting paths with node potentials on the
/// bipartite network. Supplies and demands are nonnegative with equal totals
/// (within 1e-10). Ties are broken toward the lowest node index, so the
/// result is deterministic. Throws kInfeasible when the allowed arcs cannot
/// carry all the mass.
TransportResult solve_transport(const Eigen::VectorXd& supply,
                                const Eigen::VectorXd& demand,
                                const Eigen::MatrixXd& cost,
                                const ArcFilter& forbidden = nullptr);

Eigen::MatrixXd cost_matrix(const DiscreteMeasure& m0,
                            const DiscreteMeasure& m1, const CostFunction& cost);

struct MKSolution {
  double value = 0.0;
  Coupling plan;
  SolveMethod method = SolveMethod::kLp;
};

/// Optimal coupling for the radial cost l(|x - y|), optionally with some
/// arcs removed.
MKSolution solve_mk(const DiscreteMeasure& m0, const DiscreteMeasure& m1,
                    const CostFunction& cost,
                    const ArcFilter& forbidden = nullptr);

/// Exhaustive minimum over the n! permutation plans. Both measures need
/// n <= 8 atoms of weight 1/n.
MKSolution brute_force_mk(const DiscreteMeasure& m0, const DiscreteMeasure& m1,
                          const CostFunction& cost);

/// solve_mk with cost u^p. Exponents above one are accepted here since the
/// linear program does not care about the shape of the cost.
double t_p(const DiscreteMeasure& m0, const DiscreteMeasure& m1, double p);

/// Expected cost of an arbitrary coupling.
double coupling_cost(const Coupling& c, const CostFunction& cost);

}  // namespace lagot
