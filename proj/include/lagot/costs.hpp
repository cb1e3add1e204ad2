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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lagot {

// Structural hypotheses on a radial cost l : [0, inf) -> [0, inf).
//   A1i   l(r u) >= r l(u) for r in (0,1), u > 0 (l(u)/u non-increasing)
//   A1ii  that inequality is strict everywhere
//   A1iii l(u) > 0 for u > 0
//   A2i   l non-decreasing
//   A2ii  l strictly increasing
//   A2iii l continuous and l(u) -> infinity
enum class Assumption { kA1i, kA1ii, kA1iii, kA2i, kA2ii, kA2iii };

std::string_view to_string(Assumption a);

class AssumptionSet {
 public:
  AssumptionSet() = default;
  AssumptionSet(std::initializer_list<Assumption> flags) {
    for (Assumption a : flags) insert(a);
  }

  void insert(Assumption a) { bits_ |= bit(a); }
  bool contains(Assumption a) const { return (bits_ & bit(a)) != 0; }
  bool contains_all(const AssumptionSet& other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  std::vector<Assumption> list() const;

  friend bool operator==(const AssumptionSet&, const AssumptionSet&) = default;

 private:
  static unsigned bit(Assumption a) { return 1u << static_cast<unsigned>(a); }
  unsigned bits_ = 0;
};

// Radial cost l(|x|). Evaluation is a pure function of u >= 0.
class CostFunction {
 public:
  using Eval = std::function<double(double)>;

  CostFunction(std::string name, std::vector<double> params, Eval eval,
               AssumptionSet declared, std::optional<double> analytic_c_ell,
               std::optional<double> r0);

  double operator()(double u) const { return eval_(u); }

  template <typename Derived>
  double of_vector(const Eigen::MatrixBase<Derived>& x) const {
    return eval_(x.norm());
  }

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  const AssumptionSet& declared() const { return declared_; }
  const std::optional<double>& analytic_c_ell() const { return c_ell_; }
  // Threshold past which l is strictly decreasing, when there is one.
  const std::optional<double>& r0() const { return r0_; }

  // "power:0.5" style rendering, parseable by parse_cost_spec.
  std::string spec() const;

  // Same cost multiplied by factor > 0. Flags and r0 carry over.
  CostFunction scaled(double factor) const;

 private:
  std::string name_;
  std::vector<double> params_;
  Eval eval_;
  AssumptionSet declared_;
  std::optional<double> c_ell_;
  std::optional<double> r0_;
};

/// Named costs:
///   power(p), p in (0,1]   u^p
///   linear                 u
///   remark_iii             2u e^{-u} on [0,1), u e^{-u} on [1, inf)
///   affine_exp(a), a >= 0  a u + 1 - e^{-u}
///   square                 u^2 (strictly convex; fails A1i, used to exercise
///                          the refusal paths and the convex-case identity)
CostFunction builtin(std::string_view name, std::span<const double> params);

inline CostFunction builtin(std::string_view name,
                            std::initializer_list<double> params = {}) {
  return builtin(name, std::span<const double>(params.begin(), params.size()));
}

/// Parses "power:0.5", "affine_exp:0.3", "remark_iii", "linear", "square".
CostFunction parse_cost_spec(std::string_view spec);

struct Witness {
  double r = 0.0;
  double u = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AssumptionCheck {
  Assumption flag;
  bool holds = true;
  std::vector<Witness> witnesses;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  // False if the flag was checked and failed; true if it held or was not
  // part of this report.
  bool holds(Assumption a) const;
  const AssumptionCheck* find(Assumption a) const;
};

std::vector<double> log_grid(double lo, double hi, int n);

// Default sample grids: 50 log-spaced r in (0,1) and 50 log-spaced u in
// [1e-3, 1e3].
std::vector<double> default_r_grid();
std::vector<double> default_u_grid();

/// Sampled check of A1i/A1ii/A1iii. A pass is evidence, not proof.
/// Equality at an interior pair (within a relative 1e-12) falsifies A1ii.
AssumptionReport check_a1(const CostFunction& cost,
                          std::span<const double> r_grid,
                          std::span<const double> u_grid);

/// Monotonicity over consecutive grid pairs, and a divergence heuristic: the
/// values at the three largest grid points are strictly increasing and the
/// last exceeds `divergence_threshold`.
AssumptionReport check_a2(const CostFunction& cost,
                          std::span<const double> u_grid,
                          double divergence_threshold = 10.0);

struct SlopeEstimate {
  double value = 0.0;     // analytic slope if declared, else `estimate`
  double estimate = 0.0;  // l(u_max)/u_max
  double lower = 0.0;     // l(u_max)/u_max
  double upper = 0.0;     // l(u_min)/u_min
  bool analytic = false;
};

/// Asymptotic slope lim l(u)/u. Analytic when the cost declares it. The
/// numeric estimate l(u_max)/u_max comes with the tail bracket
/// [l(u_max)/u_max, l(u_min)/u_min]; the ratio is non-increasing under A1i,
/// so the limit sits at or below the estimate. Throws kNonMonotoneSlope if
/// the tail ratios increase. An empty tail uses {10, 1e2, ..., 1e6}.
SlopeEstimate c_ell(const CostFunction& cost,
                    std::span<const double> tail_points = {});

}  // namespace lagot
