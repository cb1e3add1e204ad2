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

#include "lagot/mk_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "lagot/error.hpp"

namespace lagot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual amounts at or below this are treated as exhausted.
constexpr double kMassEps = 1e-15;
// Unplaced supply above this means the allowed arcs cannot carry the mass.
constexpr double kInfeasibleMass = 1e-10;

}  // namespace

std::string_view to_string(SolveMethod m) {
  return m == SolveMethod::kLp ? "lp" : "brute_force";
}

TransportResult solve_transport(const Eigen::VectorXd& supply,
                                const Eigen::VectorXd& demand,
                                const Eigen::MatrixXd& cost,
                                const ArcFilter& forbidden) {
  const Index n = supply.size();
  const Index m = demand.size();
  if (cost.rows() != n || cost.cols() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "cost matrix shape mismatch");
  }
  if (std::abs(supply.sum() - demand.sum()) > kInfeasibleMass) {
    throw Error(ErrorCode::kInfeasible, "supply and demand totals differ");
  }

  // Arc admissibility is evaluated once; the predicate may be expensive.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      allowed(i, j) = !(forbidden && forbidden(i, j));
    }
  }

  // Node layout: 0 is the super source, 1..n the sources, n+1..n+m the sinks.
  const Index nodes = 1 + n + m;
  auto src_node = [](Index i) { return 1 + i; };
  auto sink_node = [n](Index j) { return 1 + n + j; };

  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(n, m);
  Eigen::VectorXd supply_left = supply;
  Eigen::VectorXd demand_left = demand;
  std::vector<double> pot(static_cast<std::size_t>(nodes), 0.0);
  std::vector<double> dist(static_cast<std::size_t>(nodes));
  std::vector<Index> parent(static_cast<std::size_t>(nodes));
  std::vector<char> done(static_cast<std::size_t>(nodes));

  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[0] = 0.0;

    auto relax = [&](Index from, Index to, double arc_cost) {
      const double rc = std::max(0.0, arc_cost + pot[from] - pot[to]);
      const double cand = dist[from] + rc;
      if (cand < dist[to]) {
        dist[to] = cand;
        parent[to] = from;
      }
    };

    Index target = -1;
    for (Index step = 0; step < nodes; ++step) {
      Index u = -1;
      for (Index v = 0; v < nodes; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      if (u == 0) {
        for (Index i = 0; i < n; ++i) {
          if (supply_left(i) > kMassEps) relax(0, src_node(i), 0.0);
        }
      } else if (u <= n) {
        const Index i = u - 1;
        for (Index j = 0; j < m; ++j) {
          if (allowed(i, j)) relax(u, sink_node(j), cost(i, j));
        }
      } else {
        const Index j = u - 1 - n;
        if (demand_left(j) > kMassEps) {
          target = u;
          break;
        }
        for (Index i = 0; i < n; ++i) {
          if (flow(i, j) > 0.0) relax(u, src_node(i), -cost(i, j));
        }
      }
    }

    if (target < 0) {
      const double unplaced = supply_left.sum();
      if (unplaced > kInfeasibleMass) {
        std::ostringstream msg;
        msg << "mass " << unplaced << " cannot reach any sink";
        throw Error(ErrorCode::kInfeasible, msg.str());
      }
      break;
    }

    const double reach = dist[target];
    for (Index v = 0; v < nodes; ++v) pot[v] += std::min(dist[v], reach);

    // Bottleneck along the path: source supply, sink demand, and the flow on
    // every reverse (sink -> source) arc used.
    double amount = demand_left(target - 1 - n);
    Index first_source = -1;
    for (Index v = target; v != 0; v = parent[v]) {
      const Index u = parent[v];
      if (u == 0) {
        first_source = v - 1;
        amount = std::min(amount, supply_left(first_source));
      } else if (u > n) {
        amount = std::min(amount, flow(v - 1, u - 1 - n));
      }
    }

    for (Index v = target; v != 0; v = parent[v]) {
      const Index u = parent[v];
      if (u == 0) continue;
      if (u <= n) {
        flow(u - 1, v - 1 - n) += amount;
      } else {
        double& f = flow(v - 1, u - 1 - n);
        f = (f <= amount) ? 0.0 : f - amount;
      }
    }
    double& s = supply_left(first_source);
    s = (s <= amount) ? 0.0 : s - amount;
    double& d = demand_left(target - 1 - n);
    d = (d <= amount) ? 0.0 : d - amount;

    if (!(supply_left.maxCoeff() > kMassEps)) break;
  }

  TransportResult out;
  out.value = flow.cwiseProduct(cost).sum();
  out.plan = std::move(flow);
  return out;
}

Eigen::MatrixXd cost_matrix(const DiscreteMeasure& m0,
                            const DiscreteMeasure& m1,
                            const CostFunction& cost) {
  if (m0.dim() != m1.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "measures live in different dimensions");
  }
  Eigen::MatrixXd c(m0.size(), m1.size());
  for (Index i = 0; i < m0.size(); ++i) {
    for (Index j = 0; j < m1.size(); ++j) {
      c(i, j) = cost((m0.point(i) - m1.point(j)).norm());
    }
  }
  return c;
}

MKSolution solve_mk(const DiscreteMeasure& m0, const DiscreteMeasure& m1,
                    const CostFunction& cost, const ArcFilter& forbidden) {
  const Eigen::MatrixXd c = cost_matrix(m0, m1, cost);
  TransportResult res = solve_transport(m0.weights(), m1.weights(), c, forbidden);
  return MKSolution{res.value, make_coupling(m0, m1, std::move(res.plan)),
                    SolveMethod::kLp};
}

MKSolution brute_force_mk(const DiscreteMeasure& m0, const DiscreteMeasure& m1,
                          const CostFunction& cost) {
  const Index n = m0.size();
  if (n > 8 || m1.size() > 8) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to 8 atoms");
  }
  const double w = 1.0 / static_cast<double>(n);
  if (m1.size() != n ||
      (m0.weights().array() - w).abs().maxCoeff() > kWeightSumTol ||
      (m1.weights().array() - w).abs().maxCoeff() > kWeightSumTol) {
    throw Error(ErrorCode::kUnequalWeights,
                "brute force needs equal atom counts with weight 1/n");
  }
  const Eigen::MatrixXd c = cost_matrix(m0, m1, cost);

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> best = perm;
  double best_value = kInf;
  do {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) total += c(i, perm[i]);
    total *= w;
    if (total < best_value) {
      best_value = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Eigen::MatrixXd plan = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) plan(i, best[i]) = m0.weight(i);
  // Report the value in the same summation form as the LP path.
  const double value = plan.cwiseProduct(c).sum();
  return MKSolution{value, make_coupling(m0, m1, std::move(plan)),
                    SolveMethod::kBruteForce};
}

double t_p(const DiscreteMeasure& m0, const DiscreteMeasure& m1, double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::kBadParam, "t_p needs p > 0");
  if (p <= 1.0) return solve_mk(m0, m1, builtin("power", {p})).value;
  const CostFunction cost("power", {p}, [p](double u) { return std::pow(u, p); },
                          {}, std::nullopt, std::nullopt);
  return solve_mk(m0, m1, cost).value;
}

double coupling_cost(const Coupling& c, const CostFunction& cost) {
  return c.plan().cwiseProduct(cost_matrix(c.source(), c.target(), cost)).sum();
}

}  // namespace lagot
