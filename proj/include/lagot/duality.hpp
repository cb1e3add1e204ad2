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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lagot/costs.hpp"
#include "lagot/measures.hpp"
#include "lagot/paths.hpp"

namespace lagot {

// Function sampled on a finite candidate set; columns of `points` pair with
// entries of `values`.
class GridFunction {
 public:
  GridFunction(Eigen::MatrixXd points, Eigen::VectorXd values);

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }
  Index dim() const { return points_.rows(); }
  Index size() const { return points_.cols(); }

 private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd values_;
};

struct InfConvValue {
  double value = 0.0;
  Index argmin = 0;  // first grid index attaining the minimum
};

/// min over grid points y of l(|y - x|) + f(y) at every column x of queries.
std::vector<InfConvValue> inf_conv_argmin(const GridFunction& f,
                                          const CostFunction& cost,
                                          const Eigen::MatrixXd& queries);

std::vector<double> inf_conv(const GridFunction& f, const CostFunction& cost,
                             const Eigen::MatrixXd& queries);

struct ControlIdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;                 // lhs - rhs
  std::vector<double> fl_values;       // f^l at each source atom
  std::vector<Index> selected;         // grid index chosen for each atom
  double oracle_min_margin = 0.0;      // min over atoms of oracle - l(|y-x|)
  std::string note;
};

/// Terminal-cost control problem against the infimal convolution, for a
/// discrete initial law. The left side is assembled from explicit paths
/// (one straight path per atom to its best grid point, priced with the
/// modified cost Li), the right side from inf_conv. Every selected pair is
/// cross-checked against oracle_min_path. Throws kHypothesisNotDeclared
/// unless the cost declares A2iii and A1i, plus A1iii and A2i for i = 2.
ControlIdentityReport verify_control_identity(const DiscreteMeasure& m0,
                                              const GridFunction& f,
                                              const CostFunction& cost,
                                              Modifier i);

}  // namespace lagot
