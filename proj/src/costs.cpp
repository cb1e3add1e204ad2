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

#include "lagot/costs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lagot/error.hpp"

namespace lagot {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require_params(std::string_view name, std::span<const double> params,
                    std::size_t count) {
  if (params.size() != count) {
    std::ostringstream msg;
    msg << name << " takes " << count << " parameter(s), got "
        << params.size();
    throw Error(ErrorCode::kBadParam, msg.str());
  }
}

void add_witness(AssumptionCheck& check, const Witness& w) {
  check.holds = false;
  if (check.witnesses.size() < kMaxWitnesses) check.witnesses.push_back(w);
}

}  // namespace

std::string_view to_string(Assumption a) {
  switch (a) {
    case Assumption::kA1i: return "A1i";
    case Assumption::kA1ii: return "A1ii";
    case Assumption::kA1iii: return "A1iii";
    case Assumption::kA2i: return "A2i";
    case Assumption::kA2ii: return "A2ii";
    case Assumption::kA2iii: return "A2iii";
  }
  return "?";
}

std::vector<Assumption> AssumptionSet::list() const {
  std::vector<Assumption> out;
  for (Assumption a : {Assumption::kA1i, Assumption::kA1ii, Assumption::kA1iii,
                       Assumption::kA2i, Assumption::kA2ii, Assumption::kA2iii}) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

CostFunction::CostFunction(std::string name, std::vector<double> params,
                           Eval eval, AssumptionSet declared,
                           std::optional<double> analytic_c_ell,
                           std::optional<double> r0)
    : name_(std::move(name)),
      params_(std::move(params)),
      eval_(std::move(eval)),
      declared_(declared),
      c_ell_(analytic_c_ell),
      r0_(r0) {}

std::string CostFunction::spec() const {
  std::string out = name_;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    out += (k == 0) ? ':' : ',';
    out += format_double(params_[k]);
  }
  return out;
}

CostFunction CostFunction::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kBadParam, "scale factor must be positive");
  }
  Eval base = eval_;
  std::optional<double> c;
  if (c_ell_) c = factor * *c_ell_;
  return CostFunction(name_ + "*" + format_double(factor), params_,
                      [base, factor](double u) { return factor * base(u); },
                      declared_, c, r0_);
}

CostFunction builtin(std::string_view name, std::span<const double> params) {
  using A = Assumption;
  if (name == "power") {
    require_params(name, params, 1);
    const double p = params[0];
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kBadParam, "power exponent must lie in (0,1]");
    }
    AssumptionSet flags{A::kA1i, A::kA1iii, A::kA2i, A::kA2ii, A::kA2iii};
    if (p < 1.0) flags.insert(A::kA1ii);
    return CostFunction("power", {p}, [p](double u) { return std::pow(u, p); },
                        flags, p < 1.0 ? 0.0 : 1.0, std::nullopt);
  }
  if (name == "linear") {
    require_params(name, params, 0);
    return CostFunction("linear", {}, [](double u) { return u; },
                        {A::kA1i, A::kA1iii, A::kA2i, A::kA2ii, A::kA2iii}, 1.0,
                        std::nullopt);
  }
  if (name == "remark_iii") {
    require_params(name, params, 0);
    return CostFunction(
        "remark_iii", {},
        [](double u) {
          return u < 1.0 ? 2.0 * u * std::exp(-u) : u * std::exp(-u);
        },
        {A::kA1i, A::kA1ii, A::kA1iii}, 0.0, 1.0);
  }
  if (name == "affine_exp") {
    require_params(name, params, 1);
    const double a = params[0];
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::kBadParam, "affine_exp slope must be >= 0");
    }
    AssumptionSet flags{A::kA1i, A::kA1ii, A::kA1iii, A::kA2i, A::kA2ii};
    if (a > 0.0) flags.insert(A::kA2iii);
    return CostFunction("affine_exp", {a},
                        [a](double u) { return a * u - std::expm1(-u); }, flags,
                        a, std::nullopt);
  }
  if (name == "square") {
    require_params(name, params, 0);
    return CostFunction("square", {}, [](double u) { return u * u; },
                        {A::kA1iii, A::kA2i, A::kA2ii, A::kA2iii}, std::nullopt,
                        std::nullopt);
  }
  throw Error(ErrorCode::kUnknownCost, std::string(name));
}

CostFunction parse_cost_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view tok = rest.substr(0, comma);
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw Error(ErrorCode::kBadParam,
                    "cannot parse cost parameter '" + std::string(tok) + "'");
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return builtin(name, params);
}

bool AssumptionReport::holds(Assumption a) const {
  const AssumptionCheck* c = find(a);
  return c == nullptr || c->holds;
}

const AssumptionCheck* AssumptionReport::find(Assumption a) const {
  for (const AssumptionCheck& c : checks) {
    if (c.flag == a) return &c;
  }
  return nullptr;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw Error(ErrorCode::kBadParam, "log_grid needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < n; ++k) {
    out[k] = std::exp(a + (b - a) * k / (n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_r_grid() { return log_grid(1e-3, 0.999, 50); }
std::vector<double> default_u_grid() { return log_grid(1e-3, 1e3, 50); }

AssumptionReport check_a1(const CostFunction& cost,
                          std::span<const double> r_grid,
                          std::span<const double> u_grid) {
  AssumptionCheck a1i{Assumption::kA1i, true, {}};
  AssumptionCheck a1ii{Assumption::kA1ii, true, {}};
  AssumptionCheck a1iii{Assumption::kA1iii, true, {}};
  for (double r : r_grid) {
    if (!(r > 0.0 && r < 1.0)) {
      throw Error(ErrorCode::kBadParam, "r grid must lie in (0,1)");
    }
  }
  for (double u : u_grid) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw Error(ErrorCode::kBadParam, "u grid must be positive");
    }
    const double lu = cost(u);
    if (!(lu > 0.0)) add_witness(a1iii, {1.0, u, lu, 0.0});
    for (double r : r_grid) {
      const double lhs = cost(r * u);
      const double rhs = r * lu;
      const double tol = 1e-12 * std::abs(rhs);
      if (lhs < rhs - tol) add_witness(a1i, {r, u, lhs, rhs});
      if (std::abs(lhs - rhs) <= tol) add_witness(a1ii, {r, u, lhs, rhs});
    }
  }
  // A strict inequality cannot hold where the weak one already fails.
  if (!a1i.holds) {
    a1ii.holds = false;
    if (a1ii.witnesses.empty()) a1ii.witnesses = a1i.witnesses;
  }
  return AssumptionReport{{a1i, a1ii, a1iii}};
}

AssumptionReport check_a2(const CostFunction& cost,
                          std::span<const double> u_grid,
                          double divergence_threshold) {
  for (std::size_t k = 0; k < u_grid.size(); ++k) {
    if (!(u_grid[k] > 0.0) || (k > 0 && !(u_grid[k] > u_grid[k - 1]))) {
      throw Error(ErrorCode::kBadParam,
                  "u grid must be positive and strictly increasing");
    }
  }
  AssumptionCheck a2i{Assumption::kA2i, true, {}};
  AssumptionCheck a2ii{Assumption::kA2ii, true, {}};
  AssumptionCheck a2iii{Assumption::kA2iii, true, {}};
  std::vector<double> values;
  values.reserve(u_grid.size());
  for (double u : u_grid) values.push_back(cost(u));
  for (std::size_t k = 1; k < values.size(); ++k) {
    const Witness w{u_grid[k - 1], u_grid[k], values[k - 1], values[k]};
    if (values[k] < values[k - 1]) add_witness(a2i, w);
    if (!(values[k] > values[k - 1])) add_witness(a2ii, w);
  }
  const std::size_t n = values.size();
  if (n < 3) {
    a2iii.holds = false;
  } else {
    const bool rising =
        values[n - 3] < values[n - 2] && values[n - 2] < values[n - 1];
    if (!rising || !(values[n - 1] > divergence_threshold)) {
      add_witness(a2iii, {divergence_threshold, u_grid[n - 1], values[n - 1],
                          divergence_threshold});
    }
  }
  return AssumptionReport{{a2i, a2ii, a2iii}};
}

SlopeEstimate c_ell(const CostFunction& cost,
                    std::span<const double> tail_points) {
  static const double kDefaultTail[] = {10.0, 1e2, 1e3, 1e4, 1e5, 1e6};
  SlopeEstimate out;
  const bool have_tail = !tail_points.empty();
  if (!have_tail && cost.analytic_c_ell()) {
    out.value = out.estimate = out.lower = out.upper = *cost.analytic_c_ell();
    out.analytic = true;
    return out;
  }
  std::span<const double> tail =
      have_tail ? tail_points : std::span<const double>(kDefaultTail);
  for (std::size_t k = 0; k < tail.size(); ++k) {
    if (!(tail[k] >= 10.0) || (k > 0 && !(tail[k] > tail[k - 1]))) {
      throw Error(ErrorCode::kBadParam,
                  "tail points must be increasing and >= 10");
    }
  }
  double prev = cost(tail.front()) / tail.front();
  out.upper = prev;
  for (std::size_t k = 1; k < tail.size(); ++k) {
    const double ratio = cost(tail[k]) / tail[k];
    if (ratio > prev * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "l(u)/u increases from " << prev << " to " << ratio << " at u = "
          << tail[k];
      throw Error(ErrorCode::kNonMonotoneSlope, msg.str());
    }
    prev = ratio;
  }
  out.estimate = out.lower = prev;
  if (cost.analytic_c_ell()) {
    out.value = *cost.analytic_c_ell();
    out.analytic = true;
  } else {
    out.value = out.estimate;
  }
  return out;
}

}  // namespace lagot
