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

#include "lagot/measures.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "lagot/error.hpp"

namespace lagot {

DiscreteMeasure validate_measure(std::span<const RawAtom> raw, Index dim) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptyMeasure, "measure has no atoms");
  }
  if (dim < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "dimension must be positive");
  }

  // Exact coordinate equality decides merging; first occurrence fixes order.
  std::map<std::vector<double>, std::size_t> seen;
  std::vector<std::vector<double>> coords;
  std::vector<double> mass;
  double total = 0.0;
  for (const RawAtom& atom : raw) {
    if (atom.x.size() != dim) {
      std::ostringstream msg;
      msg << "atom of length " << atom.x.size() << " in a dim " << dim
          << " measure";
      throw Error(ErrorCode::kDimensionMismatch, msg.str());
    }
    if (!std::isfinite(atom.w) || atom.w < 0.0) {
      throw Error(ErrorCode::kBadParam, "weights must be finite and >= 0");
    }
    if (!atom.x.allFinite()) {
      throw Error(ErrorCode::kBadParam, "atom coordinates must be finite");
    }
    std::vector<double> key(atom.x.data(), atom.x.data() + dim);
    auto [it, inserted] = seen.emplace(key, coords.size());
    if (inserted) {
      coords.push_back(std::move(key));
      mass.push_back(atom.w);
    } else {
      mass[it->second] += atom.w;
    }
    total += atom.w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights sum to " << total;
    throw Error(ErrorCode::kWeightSumMismatch, msg.str());
  }

  Index kept = 0;
  for (double w : mass) kept += (w > 0.0) ? 1 : 0;
  Eigen::MatrixXd points(dim, kept);
  Eigen::VectorXd weights(kept);
  Index col = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!(mass[k] > 0.0)) continue;
    points.col(col) = Eigen::Map<const Eigen::VectorXd>(coords[k].data(), dim);
    weights(col) = mass[k];
    ++col;
  }
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure make_measure(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& weights) {
  if (points.cols() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point and weight counts differ");
  }
  std::vector<RawAtom> raw;
  raw.reserve(static_cast<std::size_t>(weights.size()));
  for (Index i = 0; i < weights.size(); ++i) {
    raw.push_back({points.col(i), weights(i)});
  }
  return validate_measure(raw, points.rows());
}

double DiscreteMeasure::cross_diameter(const DiscreteMeasure& other) const {
  double best = 0.0;
  for (Index i = 0; i < size(); ++i) {
    for (Index j = 0; j < other.size(); ++j) {
      best = std::max(best, (point(i) - other.point(j)).norm());
    }
  }
  return best;
}

DiscreteMeasure random_measure(std::uint64_t seed, Index n_atoms, Index dim,
                               double box_radius) {
  if (n_atoms < 1 || dim < 1 || !(box_radius > 0.0)) {
    throw Error(ErrorCode::kBadParam,
                "random_measure needs n_atoms >= 1, dim >= 1, radius > 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box_radius, box_radius);
  std::exponential_distribution<double> expo(1.0);

  std::vector<RawAtom> raw(static_cast<std::size_t>(n_atoms));
  double total = 0.0;
  for (RawAtom& atom : raw) {
    atom.x.resize(dim);
    for (Index k = 0; k < dim; ++k) atom.x(k) = coord(rng);
    atom.w = expo(rng);
    total += atom.w;
  }
  for (RawAtom& atom : raw) atom.w /= total;
  if (n_atoms == 1) raw.front().w = 1.0;
  return validate_measure(raw, dim);
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b,
                  double tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  return (a.points() - b.points()).cwiseAbs().maxCoeff() <= tol &&
         (a.weights() - b.weights()).cwiseAbs().maxCoeff() <= tol;
}

bool approx_equivalent(const DiscreteMeasure& a, const DiscreteMeasure& b,
                       double tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (Index i = 0; i < a.size(); ++i) {
    Index match = -1;
    for (Index j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if ((a.point(i) - b.point(j)).cwiseAbs().maxCoeff() <= tol) {
        match = j;
        break;
      }
    }
    if (match < 0 || std::abs(a.weight(i) - b.weight(match)) > tol) {
      return false;
    }
    used[match] = true;
  }
  return true;
}

Coupling make_coupling(DiscreteMeasure source, DiscreteMeasure target,
                       Eigen::MatrixXd plan) {
  if (source.dim() != target.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "source and target live in different dimensions");
  }
  if (plan.rows() != source.size() || plan.cols() != target.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plan shape mismatch");
  }
  if (!plan.allFinite() || (plan.size() > 0 && plan.minCoeff() < 0.0)) {
    throw Error(ErrorCode::kInvalidCoupling, "plan must be finite and >= 0");
  }
  const double row_err =
      (plan.rowwise().sum() - source.weights()).cwiseAbs().maxCoeff();
  const double col_err =
      (plan.colwise().sum().transpose() - target.weights()).cwiseAbs().maxCoeff();
  if (row_err > kPlanMarginalTol || col_err > kPlanMarginalTol) {
    std::ostringstream msg;
    msg << "plan marginals off by " << std::max(row_err, col_err);
    throw Error(ErrorCode::kInvalidCoupling, msg.str());
  }
  return Coupling(std::move(source), std::move(target), std::move(plan));
}

Coupling product_coupling(const DiscreteMeasure& source,
                          const DiscreteMeasure& target) {
  Eigen::MatrixXd plan = source.weights() * target.weights().transpose();
  return make_coupling(source, target, std::move(plan));
}

std::pair<DiscreteMeasure, DiscreteMeasure> marginals(const Coupling& c) {
  const Eigen::MatrixXd& plan = c.plan();
  const double total = plan.sum();
  const Eigen::VectorXd rows = plan.rowwise().sum() / total;
  const Eigen::VectorXd cols = plan.colwise().sum().transpose() / total;
  return {make_measure(c.source().points(), rows),
          make_measure(c.target().points(), cols)};
}

}  // namespace lagot
