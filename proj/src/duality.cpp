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

#include "lagot/duality.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "lagot/ensembles.hpp"
#include "lagot/error.hpp"

namespace lagot {

GridFunction::GridFunction(Eigen::MatrixXd points, Eigen::VectorXd values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.cols() == 0 || points_.rows() == 0) {
    throw Error(ErrorCode::kInvalidGridFunction, "grid is empty");
  }
  if (points_.cols() != values_.size()) {
    throw Error(ErrorCode::kInvalidGridFunction,
                "grid point and value counts differ");
  }
  if (!points_.allFinite() || !values_.allFinite()) {
    throw Error(ErrorCode::kInvalidGridFunction, "grid data must be finite");
  }
  std::map<std::vector<double>, Index> seen;
  for (Index k = 0; k < points_.cols(); ++k) {
    std::vector<double> key(points_.col(k).data(),
                            points_.col(k).data() + points_.rows());
    if (!seen.emplace(std::move(key), k).second) {
      throw Error(ErrorCode::kInvalidGridFunction, "grid points repeat");
    }
  }
}

std::vector<InfConvValue> inf_conv_argmin(const GridFunction& f,
                                          const CostFunction& cost,
                                          const Eigen::MatrixXd& queries) {
  if (queries.rows() != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query points and grid differ in dimension");
  }
  std::vector<InfConvValue> out;
  out.reserve(static_cast<std::size_t>(queries.cols()));
  for (Index q = 0; q < queries.cols(); ++q) {
    const Point x = queries.col(q);
    InfConvValue best{std::numeric_limits<double>::infinity(), 0};
    for (Index g = 0; g < f.size(); ++g) {
      const Point y = f.points().col(g);
      const double v = cost((y - x).norm()) + f.values()(g);
      if (v < best.value) best = {v, g};
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> inf_conv(const GridFunction& f, const CostFunction& cost,
                             const Eigen::MatrixXd& queries) {
  std::vector<double> out;
  for (const InfConvValue& v : inf_conv_argmin(f, cost, queries)) {
    out.push_back(v.value);
  }
  return out;
}

ControlIdentityReport verify_control_identity(const DiscreteMeasure& m0,
                                              const GridFunction& f,
                                              const CostFunction& cost,
                                              Modifier i) {
  using A = Assumption;
  AssumptionSet needed{A::kA1i, A::kA2iii};
  if (i == Modifier::kN2) {
    needed.insert(A::kA1iii);
    needed.insert(A::kA2i);
  }
  if (!cost.declared().contains_all(needed)) {
    std::string missing;
    for (A a : needed.list()) {
      if (!cost.declared().contains(a)) {
        missing += std::string(missing.empty() ? "" : ",") +
                   std::string(to_string(a));
      }
    }
    throw Error(ErrorCode::kHypothesisNotDeclared,
                cost.name() + " does not declare " + missing);
  }
  if (m0.dim() != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "initial law and grid differ in dimension");
  }

  const std::vector<InfConvValue> fl = inf_conv_argmin(f, cost, m0.points());
  static const double kOracleGrid[] = {0.5, 1.0, 2.0, 4.0};
  const Objective objective =
      i == Modifier::kN1 ? Objective::kL1 : Objective::kL2;

  ControlIdentityReport report;
  report.oracle_min_margin = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < m0.size(); ++k) {
    const Point x = m0.point(k);
    const Point y = f.points().col(fl[k].argmin);
    const double path_cost = cost_li(linear_path(x, y), cost, i);
    report.lhs += m0.weight(k) * (path_cost + f.values()(fl[k].argmin));
    report.rhs += m0.weight(k) * fl[k].value;
    report.fl_values.push_back(fl[k].value);
    report.selected.push_back(fl[k].argmin);

    const OracleResult oracle =
        oracle_min_path(x, y, cost, objective, 4, kOracleGrid);
    report.oracle_min_margin =
        std::min(report.oracle_min_margin, oracle.value - cost((y - x).norm()));
  }
  report.margin = report.lhs - report.rhs;
  report.note =
      "atomic initial law: identity checked atomwise with terminal points "
      "restricted to the grid";
  return report;
}

}  // namespace lagot
