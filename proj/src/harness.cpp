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

#include "lagot/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lagot/error.hpp"
#include "lagot/generators.hpp"

namespace lagot {

namespace {

constexpr std::array<std::pair<Theorem, std::string_view>, 10> kTheoremNames{{
    {Theorem::kThm2_1, "thm2_1"},
    {Theorem::kThm2_2, "thm2_2"},
    {Theorem::kProp2_3, "prop2_3"},
    {Theorem::kCor2_4, "cor2_4"},
    {Theorem::kThm2_6, "thm2_6"},
    {Theorem::kCor2_7, "cor2_7"},
    {Theorem::kCor2_8, "cor2_8"},
    {Theorem::kEq1_6, "eq1_6"},
    {Theorem::kEq1_9_0416, "eq1_9_0416"},
    {Theorem::kEq1_11_0508, "eq1_11_0508"},
}};

// Tolerance for identities that hold up to a few roundings.
constexpr double kStructTol = 1e-12;
constexpr double kBoxRadius = 2.0;

std::string fmt(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string digest_of(const Json& inputs) { return fnv1a_hex(inputs.dump()); }

Index draw_size(Rng& rng, Index max_atoms) {
  return 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(max_atoms));
}

std::pair<DiscreteMeasure, DiscreteMeasure> random_pair(Rng& rng, const VerifyConfig& cfg,
                                                        double radius = kBoxRadius) {
  const Index n0 = draw_size(rng, cfg.n_atoms);
  const Index n1 = draw_size(rng, cfg.n_atoms);
  DiscreteMeasure m0 = random_measure(rng(), n0, cfg.dim, radius);
  DiscreteMeasure m1 = random_measure(rng(), n1, cfg.dim, radius);
  return {std::move(m0), std::move(m1)};
}

Json pair_inputs(const DiscreteMeasure& m0, const DiscreteMeasure& m1, const CostFunction& cost) {
  return {{"p0", to_json(m0)}, {"p1", to_json(m1)}, {"cost", cost.spec()}};
}

[[noreturn]] void refuse(Theorem t, const std::string& why) {
  throw Error(ErrorCode::kAssumptionRefused, std::string(to_string(t)) + ": " + why);
}

// Sampled hypothesis check; refuses on the first failing flag.
void require(Theorem t, const CostFunction& cost, std::initializer_list<Assumption> flags) {
  const std::vector<double> rs = default_r_grid();
  const std::vector<double> us = default_u_grid();
  const AssumptionReport a1 = check_a1(cost, rs, us);
  const AssumptionReport a2 = check_a2(cost, us);
  for (Assumption a : flags) {
    const AssumptionReport& rep =
        (a == Assumption::kA1i || a == Assumption::kA1ii || a == Assumption::kA1iii) ? a1 : a2;
    const AssumptionCheck* c = rep.find(a);
    if (c != nullptr && !c->holds) {
      std::ostringstream msg;
      msg << cost.spec() << " fails " << to_string(a);
      if (!c->witnesses.empty()) {
        const Witness& w = c->witnesses.front();
        msg << " (r=" << fmt(w.r) << ", u=" << fmt(w.u) << ", lhs=" << fmt(w.lhs)
            << ", rhs=" << fmt(w.rhs) << ")";
      }
      refuse(t, msg.str());
    }
  }
}

bool sampled_holds(const CostFunction& cost, std::initializer_list<Assumption> flags) {
  const std::vector<double> rs = default_r_grid();
  const std::vector<double> us = default_u_grid();
  const AssumptionReport a1 = check_a1(cost, rs, us);
  const AssumptionReport a2 = check_a2(cost, us);
  for (Assumption a : flags) {
    if (!a1.holds(a) || !a2.holds(a)) return false;
  }
  return true;
}

template <typename Suite>
Report run_trials(const VerifyConfig& cfg, Suite&& suite) {
  Report report;
  report.config = cfg;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    TrialRecord rec;
    rec.trial = t;
    suite(rng, rec, report);
    report.trials.push_back(std::move(rec));
  }
  return report;
}

Series& series(Report& r, const std::string& kind, std::vector<std::string> columns) {
  for (Series& s : r.series) {
    if (s.kind == kind) return s;
  }
  r.series.push_back({kind, std::move(columns), {}});
  return r.series.back();
}

// ---------------------------------------------------------------------------

Report suite_thm2_1(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i});
  static const double kGrid[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    auto [m0, m1] = random_pair(rng, cfg);
    rec.digest = digest_of(pair_inputs(m0, m1, cost));
    const MKSolution sol = solve_mk(m0, m1, cost);
    const TransportEnsemble full =
        build_opt_tilde(sol, [](Index, Index) { return IntervalSet::full(); });
    const TransportEnsemble random =
        build_opt_tilde(sol, [&](Index, Index) { return random_interval_set(rng, 4, 0.05); });
    const double v_full = eval_tilde(full, cost, Modifier::kN1);
    const double v_random = eval_tilde(random, cost, Modifier::kN1);
    rec.value("T", sol.value);
    rec.value("tilde1_full", v_full);
    rec.value("tilde1_random_sets", v_random);
    rec.equal("tilde1_full", v_full, sol.value, cfg.tolerance);
    rec.equal("tilde1_random_sets", v_random, sol.value, cfg.tolerance);

    double worst = std::numeric_limits<double>::infinity();
    double worst_oracle = 0.0;
    double worst_direct = 0.0;
    for (Index i = 0; i < m0.size(); ++i) {
      for (Index j = 0; j < m1.size(); ++j) {
        if (!(sol.plan.mass(i, j) > 0.0)) continue;
        const Point x = m0.point(i);
        const Point y = m1.point(j);
        const double direct = cost((y - x).norm());
        const double oracle = oracle_min_path(x, y, cost, Objective::kL1, 4, kGrid).value;
        if (oracle - direct < worst) {
          worst = oracle - direct;
          worst_oracle = oracle;
          worst_direct = direct;
        }
      }
    }
    rec.value("oracle_worst_margin", worst);
    rec.at_least("oracle_l1_vs_direct", worst_oracle, worst_direct, cfg.tolerance);
  });
}

Report suite_thm2_2(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i, Assumption::kA1iii, Assumption::kA2i});
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    auto [m0, m1] = random_pair(rng, cfg);
    Json inputs = pair_inputs(m0, m1, cost);
    const MKSolution sol = solve_mk(m0, m1, cost);
    const TransportEnsemble e =
        build_opt_tilde(sol, [&](Index, Index) { return random_interval_set(rng, 4, 0.05); });
    const double v1 = eval_tilde(e, cost, Modifier::kN1);
    const double v2 = eval_tilde(e, cost, Modifier::kN2);
    rec.value("T", sol.value);
    rec.value("tilde1", v1);
    rec.value("tilde2", v2);
    rec.equal("tilde1_vs_T", v1, sol.value, cfg.tolerance);
    rec.equal("tilde1_vs_tilde2", v1, v2, cfg.tolerance);
    double worst_gap = 0.0;
    for (const Member& m : e.members()) worst_gap = std::max(worst_gap, std::abs(n1(m.path) - n2(m.path)));
    rec.value("max_member_n1_minus_n2", worst_gap);
    rec.at_least("member_n1_eq_n2", kStructTol, worst_gap, 0.0);

    Json paths = Json::array();
    for (int k = 0; k < 5; ++k) {
      const Point start = random_point(rng, cfg.dim, kBoxRadius);
      const int pieces = 1 + static_cast<int>(rng() % 6);
      const SteppedPath p = random_stepped_path(rng, start, pieces, 3.0);
      paths.push_back(to_json(p));
      if (p.displacement().norm() == 0.0) continue;
      const double l1 = cost_li(p, cost, Modifier::kN1);
      const double l2 = cost_li(p, cost, Modifier::kN2);
      rec.at_least("random_path_" + std::to_string(k) + "_l1_ge_l2", l1, l2, kStructTol);
    }
    inputs["paths"] = paths;
    rec.digest = digest_of(inputs);
  });
}

Report suite_prop2_3(const VerifyConfig& cfg, const CostFunction& cost) {
  if (cfg.dim < 2) {
    throw Error(ErrorCode::kConfigInvalid, "prop2_3 needs dim >= 2 for the detour");
  }
  if (!cost.r0()) refuse(cfg.theorem, cost.spec() + " declares no r0");
  const double r0 = *cost.r0();
  static const double kSteps[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0};
  for (std::size_t k = 1; k < std::size(kSteps); ++k) {
    if (!(cost(r0 * kSteps[k]) < cost(r0 * kSteps[k - 1]))) {
      refuse(cfg.theorem, cost.spec() + " is not strictly decreasing beyond r0 at u=" +
                              fmt(r0 * kSteps[k]));
    }
  }
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    Point origin = Point::Zero(cfg.dim);
    Point far = origin;
    far(0) = 2.0 * r0;
    DiscreteMeasure m0 = dirac(origin);
    DiscreteMeasure m1 = dirac(far);
    MKSolution sol = solve_mk(m0, m1, cost);
    auto applicable = [&](const MKSolution& s) {
      for (Index i = 0; i < s.plan.plan().rows(); ++i) {
        for (Index j = 0; j < s.plan.plan().cols(); ++j) {
          if (s.plan.mass(i, j) > 0.0 &&
              (s.plan.source().point(i) - s.plan.target().point(j)).norm() >= r0) {
            return true;
          }
        }
      }
      return false;
    };
    if (rec.trial > 0) {
      bool found = false;
      for (int attempt = 0; attempt < 64 && !found; ++attempt) {
        auto [a, b] = random_pair(rng, cfg, 2.0 * r0);
        MKSolution s = solve_mk(a, b, cost);
        if (applicable(s)) {
          m0 = std::move(a);
          m1 = std::move(b);
          sol = std::move(s);
          found = true;
        }
      }
      if (!found) {
        rec.digest = digest_of({{"cost", cost.spec()}});
        rec.value("applicable", 0.0);
        rec.exceeds("applicable_instance", 0.0, 1.0, 0.0);
        return;
      }
    }
    rec.digest = digest_of(pair_inputs(m0, m1, cost));
    std::vector<Member> members;
    for (Index i = 0; i < m0.size(); ++i) {
      for (Index j = 0; j < m1.size(); ++j) {
        const double mass = sol.plan.mass(i, j);
        if (!(mass > 0.0)) continue;
        const Point x = m0.point(i);
        const Point y = m1.point(j);
        members.push_back({mass, (y - x).norm() >= r0 ? detour_path(x, y) : linear_path(x, y),
                           std::nullopt});
      }
    }
    const double v2 = eval_tilde(TransportEnsemble(std::move(members)), cost, Modifier::kN2);
    rec.value("T", sol.value);
    rec.value("tilde2_upper", v2);
    rec.value("gap", sol.value - v2);
    rec.exceeds("T_exceeds_tilde2", sol.value, v2, kStrictMargin);
  });
}

Report suite_cor2_4(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i, Assumption::kA2iii});
  std::vector<Modifier> modifiers{Modifier::kN1};
  const AssumptionSet second{Assumption::kA1iii, Assumption::kA2i};
  if (cost.declared().contains_all(second) &&
      sampled_holds(cost, {Assumption::kA1iii, Assumption::kA2i})) {
    modifiers.push_back(Modifier::kN2);
  }
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    const DiscreteMeasure m0 = random_measure(rng(), draw_size(rng, cfg.n_atoms), cfg.dim, kBoxRadius);
    const Index k = cfg.n_atoms + 2;
    Eigen::MatrixXd points(cfg.dim, k);
    Eigen::VectorXd values(k);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    for (Index c = 0; c < k; ++c) {
      points.col(c) = random_point(rng, cfg.dim, kBoxRadius);
      values(c) = unit(rng);
    }
    const GridFunction f(points, values);
    rec.digest = digest_of({{"p0", to_json(m0)}, {"f", to_json(f)}, {"cost", cost.spec()}});
    for (Modifier i : modifiers) {
      const std::string tag = i == Modifier::kN1 ? "L1" : "L2";
      const ControlIdentityReport r = verify_control_identity(m0, f, cost, i);
      rec.value("lhs_" + tag, r.lhs);
      rec.value("rhs_" + tag, r.rhs);
      rec.equal("identity_" + tag, r.lhs, r.rhs, 0.0);
      rec.at_least("oracle_" + tag, r.oracle_min_margin, 0.0, cfg.tolerance);
    }
  });
}

Report suite_thm2_6(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i});
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto [m0, m1] = random_pair(rng, cfg);
    Json inputs = pair_inputs(m0, m1, cost);
    const Coupling plan = rec.trial % 2 == 0 ? solve_mk(m0, m1, cost).plan : product_coupling(m0, m1);
    std::vector<BoundedCell> cells;
    for (Index i = 0; i < m0.size(); ++i) {
      for (Index j = 0; j < m1.size(); ++j) {
        const double mass = plan.mass(i, j);
        if (!(mass > 0.0)) continue;
        const double gap = (m0.point(i) - m1.point(j)).norm();
        const int parts = 1 + static_cast<int>(rng() % 3);
        std::vector<double> share(static_cast<std::size_t>(parts));
        double total = 0.0;
        for (double& s : share) total += (s = 0.1 + unit(rng));
        for (int p = 0; p < parts; ++p) {
          double bound = gap * (1.0 + 3.0 * unit(rng));
          if (p == 0) bound = gap;  // tight cap
          if (gap == 0.0) bound = p == 0 ? 0.0 : 1.0 + unit(rng);
          cells.push_back({i, j, mass * share[p] / total, bound});
        }
      }
    }
    Json caps = Json::array();
    for (const BoundedCell& c : cells) caps.push_back({c.i, c.j, c.mass, c.bound});
    inputs["cells"] = caps;
    const BoundedCouplingTriple triple = make_bounded_triple(plan, cells);
    const double built = eval_bounded(build_opt_bounded(triple), cost);
    const double tv = eval_tv(triple, cost);
    rec.value("T_V", tv);
    rec.value("bounded_optimal", built);
    rec.equal("bounded_vs_tv", built, tv, cfg.tolerance);

    for (int k = 0; k < 4; ++k) {
      const int count = 1 + static_cast<int>(rng() % 4);
      std::vector<Member> members;
      for (int c = 0; c < count; ++c) {
        const Point x = random_point(rng, cfg.dim, kBoxRadius);
        const Point y = random_point(rng, cfg.dim, kBoxRadius);
        const SteppedPath p = random_path_between(rng, x, y, 4, 6.0);
        members.push_back({1.0 / count, p, sup_norm(p) * (1.0 + unit(rng))});
      }
      const TransportEnsemble e(std::move(members));
      inputs["ensemble_" + std::to_string(k)] = to_json(e);
      rec.at_least("admissible_" + std::to_string(k), eval_bounded(e, cost),
                   eval_tv(induced_triple(e), cost), cfg.tolerance);
    }
    rec.digest = digest_of(inputs);
  });
}

Report suite_cor2_7(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i});
  if (!cost.analytic_c_ell()) {
    throw Error(ErrorCode::kConfigInvalid, "cor2_7 needs a cost with a known asymptotic slope");
  }
  const double slope = *cost.analytic_c_ell();
  static const double kCaps[] = {1.0, 10.0, 100.0, 1e3, 1e4};
  static const double kGrid[] = {1.0, 2.0, 4.0};
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report& report) {
    auto [m0, m1] = random_pair(rng, cfg);
    rec.digest = digest_of(pair_inputs(m0, m1, cost));
    const MKSolution sol1 = solve_mk(m0, m1, builtin("linear"));
    const double t1 = sol1.value;
    const double diameter = m0.cross_diameter(m1);
    rec.value("T1", t1);
    rec.value("limit", slope * t1);
    double previous = std::numeric_limits<double>::infinity();
    Series& s = series(report, "cor2_7", {"trial", "R", "value", "limit", "upper"});
    for (double cap : kCaps) {
      const std::string tag = "R=" + fmt(cap);
      std::vector<BoundedCell> cells;
      double oracle_total = 0.0;
      for (Index i = 0; i < m0.size(); ++i) {
        for (Index j = 0; j < m1.size(); ++j) {
          const double mass = sol1.plan.mass(i, j);
          if (!(mass > 0.0)) continue;
          const Point x = m0.point(i);
          const Point y = m1.point(j);
          const double bound = std::max((y - x).norm(), cap);
          cells.push_back({i, j, mass, bound});
          oracle_total +=
              mass * oracle_min_path(x, y, cost, Objective::kPlain, 4, kGrid, bound).value;
        }
      }
      const BoundedCouplingTriple triple = make_bounded_triple(sol1.plan, cells);
      const double value = eval_bounded(build_opt_bounded(triple), cost);
      const double tv = eval_tv(triple, cost);
      const double upper = cost(cap) / cap * t1;
      rec.value(tag + ":value", value);
      rec.value(tag + ":excess", value - slope * t1);
      rec.equal(tag + ":constructed_vs_tv", value, tv, cfg.tolerance);
      rec.at_least(tag + ":above_limit", value, slope * t1, cfg.tolerance);
      rec.at_least(tag + ":below_cap_ratio", upper, value, cfg.tolerance);
      rec.at_least(tag + ":oracle_above_tv", oracle_total, tv, cfg.tolerance);
      rec.at_least(tag + ":non_increasing", previous, value, cfg.tolerance);
      if (cap >= diameter) rec.equal(tag + ":closed_form", value, upper, cfg.tolerance);
      s.rows.push_back({static_cast<double>(rec.trial), cap, value, slope * t1, upper});
      previous = value;
    }
  });
}

Report suite_cor2_8(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i});
  static const double kFactors[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report& report) {
    auto [m0, m1] = random_pair(rng, cfg);
    rec.digest = digest_of(pair_inputs(m0, m1, cost));
    const double t1 = t_p(m0, m1, 1.0);
    double diameter = m0.cross_diameter(m1);
    if (diameter == 0.0) diameter = 1.0;
    rec.value("T1", t1);
    rec.value("diameter", diameter);
    Series& s = series(report, "cor2_8", {"trial", "r", "value", "formula"});
    double previous = std::numeric_limits<double>::infinity();
    for (double factor : kFactors) {
      const double r = diameter * factor;
      const std::string tag = "r=" + fmt(r);
      const BoundedSolution b = solve_bounded(m0, m1, cost, r);
      const double formula = cost(r) / r * t1;
      rec.value(tag + ":value", b.value);
      rec.equal(tag + ":formula", b.value, formula, cfg.tolerance);
      rec.equal(tag + ":ensemble", eval_bounded(b.ensemble, cost), b.value, cfg.tolerance);
      rec.at_least(tag + ":non_increasing", previous, b.value, cfg.tolerance);
      s.rows.push_back({static_cast<double>(rec.trial), r, b.value, formula});
      previous = b.value;
    }
  });
}

Report suite_eq1_6(const VerifyConfig& cfg, const CostFunction& cost) {
  require(cfg.theorem, cost, {Assumption::kA1i});
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report& report) {
    Point x = Point::Zero(cfg.dim);
    Point y = x;
    y(0) = 1.0;
    if (rec.trial > 0) {
      x = random_point(rng, cfg.dim, kBoxRadius);
      y = random_point(rng, cfg.dim, kBoxRadius);
    }
    rec.digest = digest_of({{"x", point_to_json(x)}, {"y", point_to_json(y)}, {"cost", cost.spec()}});
    const double gap = (y - x).norm();
    Series& s = series(report, "eq1_6", {"trial", "n", "value"});
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 32; ++n) {
      const std::string tag = "n=" + std::to_string(n);
      const double value = cost_plain(fast_path(x, y, n), cost);
      rec.equal(tag + ":formula", value, cost(n * gap) / n, cfg.tolerance);
      rec.at_least(tag + ":non_increasing", previous, value, cfg.tolerance);
      rec.at_least(tag + ":below_direct", cost(gap), value, cfg.tolerance);
      s.rows.push_back({static_cast<double>(rec.trial), static_cast<double>(n), value});
      previous = value;
    }
    rec.value("n=32:value", previous);
  });
}

Report suite_eq1_9(const VerifyConfig& cfg, const CostFunction& cost) {
  const std::vector<double> us = default_u_grid();
  for (double a : us) {
    for (double b : us) {
      const double mid = cost(0.5 * (a + b));
      const double chord = 0.5 * (cost(a) + cost(b));
      if (mid > chord + 1e-12 * std::max(1.0, std::abs(chord))) {
        refuse(cfg.theorem, cost.spec() + " is not convex (midpoint of " + fmt(a) + " and " +
                                fmt(b) + ")");
      }
    }
  }
  static const double kGrid[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  static const double kFixed[] = {1.0, 2.0, 0.5};
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    Point x = Point::Zero(cfg.dim);
    Point y = x;
    if (rec.trial < 3) {
      y(0) = kFixed[rec.trial];
    } else {
      x = random_point(rng, cfg.dim, kBoxRadius);
      y = random_point(rng, cfg.dim, kBoxRadius);
    }
    rec.digest = digest_of({{"x", point_to_json(x)}, {"y", point_to_json(y)}, {"cost", cost.spec()}});
    const double direct = cost((y - x).norm());
    rec.value("direct", direct);
    for (Objective o : {Objective::kScaled1, Objective::kScaled2, Objective::kPlain}) {
      const std::string tag(to_string(o));
      const double v = oracle_min_path(x, y, cost, o, 4, kGrid).value;
      rec.value(tag, v);
      rec.equal(tag + ":vs_direct", v, direct, cfg.tolerance);
    }
  });
}

Report suite_eq1_11(const VerifyConfig& cfg, const CostFunction& cost) {
  return run_trials(cfg, [&](Rng& rng, TrialRecord& rec, Report&) {
    Json paths = Json::array();
    for (int k = 0; k < 5; ++k) {
      const Point start = random_point(rng, cfg.dim, kBoxRadius);
      const int pieces = 1 + static_cast<int>(rng() % 6);
      const SteppedPath p = random_stepped_path(rng, start, pieces, 3.0);
      paths.push_back(to_json(p));
      const std::string tag = "path" + std::to_string(k);
      for (Modifier i : {Modifier::kN1, Modifier::kN2}) {
        const std::string it = tag + (i == Modifier::kN1 ? ":L1" : ":L2");
        const double tau = i == Modifier::kN1 ? n1(p) : n2(p);
        const SteppedPath q = stretch(p, tau);
        const double tau_after = i == Modifier::kN1 ? n1(q) : n2(q);
        rec.equal(it + ":time_change", cost_plain(q, cost), cost_li(p, cost, i), cfg.tolerance);
        rec.equal(it + ":modulus_is_horizon", tau_after, tau, kStructTol * tau);
      }
      const SteppedPath back = compress(stretch(p, n1(p)));
      double worst = 0.0;
      double scale = 1.0;
      for (std::size_t c = 0; c < p.pieces().size(); ++c) {
        worst = std::max(worst, std::abs(back.pieces()[c].duration - p.pieces()[c].duration));
        worst = std::max(
            worst, (back.pieces()[c].velocity - p.pieces()[c].velocity).cwiseAbs().maxCoeff());
        scale = std::max(scale, p.pieces()[c].velocity.cwiseAbs().maxCoeff());
      }
      rec.at_least(tag + ":roundtrip", 1e-15 * scale, worst, 0.0);
    }
    rec.digest = digest_of({{"paths", paths}, {"cost", cost.spec()}});
  });
}

Json series_to_json(const Series& s) {
  return {{"kind", s.kind}, {"columns", s.columns}, {"rows", s.rows}};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Theorem t) {
  for (const auto& [theorem, name] : kTheoremNames) {
    if (theorem == t) return name;
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (const auto& [theorem, n] : kTheoremNames) {
    if (n == name) return theorem;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown theorem '" + std::string(name) + "'");
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> all = [] {
    std::vector<Theorem> out;
    for (const auto& entry : kTheoremNames) out.push_back(entry.first);
    return out;
  }();
  return all;
}

void validate_config(const VerifyConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::kConfigInvalid, "trials must be >= 1");
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
    throw Error(ErrorCode::kConfigInvalid, "tolerance must be positive");
  }
  if (cfg.n_atoms < 1) throw Error(ErrorCode::kConfigInvalid, "n_atoms must be >= 1");
  if (cfg.dim < 1) throw Error(ErrorCode::kConfigInvalid, "dim must be >= 1");
}

Json to_json(const VerifyConfig& cfg) {
  return {{"theorem", to_string(cfg.theorem)}, {"seed", cfg.seed},
          {"trials", cfg.trials},              {"n_atoms", cfg.n_atoms},
          {"dim", cfg.dim},                    {"cost", cfg.cost},
          {"tolerance", cfg.tolerance}};
}

VerifyConfig config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("theorem") || !j.at("theorem").is_string()) {
    throw Error(ErrorCode::kConfigInvalid, "config needs a \"theorem\" string");
  }
  VerifyConfig cfg;
  try {
    cfg.theorem = parse_theorem(j.at("theorem").get<std::string>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("n_atoms")) cfg.n_atoms = j.at("n_atoms").get<Index>();
    if (j.contains("dim")) cfg.dim = j.at("dim").get<Index>();
    if (j.contains("cost")) {
      const Json& c = j.at("cost");
      cfg.cost = c.is_string() ? c.get<std::string>() : cost_from_json(c).spec();
    }
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, e.what());
  }
  validate_config(cfg);
  return cfg;
}

void TrialRecord::value(std::string name, double v) { values.emplace_back(std::move(name), v); }

void TrialRecord::equal(const std::string& name, double a, double b, double tol) {
  const double upper = tol - (a - b);
  const double lower = tol - (b - a);
  checks.push_back({name + ":upper", upper, upper >= 0.0});
  checks.push_back({name + ":lower", lower, lower >= 0.0});
  pass = pass && upper >= 0.0 && lower >= 0.0;
}

void TrialRecord::at_least(const std::string& name, double a, double b, double tol) {
  const double margin = std::isinf(a) && a > 0 ? tol : a - b + tol;
  checks.push_back({name, margin, margin >= 0.0});
  pass = pass && margin >= 0.0;
}

void TrialRecord::exceeds(const std::string& name, double a, double b, double gap) {
  const double margin = (a - b) - gap;
  checks.push_back({name, margin, margin >= 0.0});
  pass = pass && margin >= 0.0;
}

int Report::passed() const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(),
                                        [](const TrialRecord& t) { return t.pass; }));
}

bool Report::pass() const { return !trials.empty() && passed() == static_cast<int>(trials.size()); }

double Report::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const TrialRecord& t : trials) {
    for (const Check& c : t.checks) m = std::min(m, c.margin);
  }
  return std::isinf(m) ? 0.0 : m;
}

double Report::max_margin() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const TrialRecord& t : trials) {
    for (const Check& c : t.checks) m = std::max(m, c.margin);
  }
  return std::isinf(m) ? 0.0 : m;
}

Json to_json(const Report& r) {
  Json trials = Json::array();
  for (const TrialRecord& t : r.trials) {
    Json values = Json::object();
    for (const auto& [k, v] : t.values) values[k] = v;
    Json checks = Json::array();
    for (const Check& c : t.checks) {
      checks.push_back({{"name", c.name}, {"margin", c.margin}, {"pass", c.pass}});
    }
    trials.push_back({{"trial", t.trial},
                      {"digest", t.digest},
                      {"values", values},
                      {"checks", checks},
                      {"pass", t.pass}});
  }
  Json series = Json::array();
  for (const Series& s : r.series) series.push_back(series_to_json(s));
  return {{"format_version", r.format_version},
          {"config", to_json(r.config)},
          {"summary",
           {{"trials", r.trials.size()},
            {"passed", r.passed()},
            {"min_margin", r.min_margin()},
            {"max_margin", r.max_margin()},
            {"pass", r.pass()}}},
          {"trials", trials},
          {"series", series}};
}

Report report_from_json(const Json& j) {
  Report r;
  try {
    r.format_version = j.at("format_version").get<int>();
    if (r.format_version != kReportFormatVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported report format version " + std::to_string(r.format_version));
    }
    r.config = config_from_json(j.at("config"));
    for (const Json& t : j.at("trials")) {
      TrialRecord rec;
      rec.trial = t.at("trial").get<int>();
      rec.digest = t.at("digest").get<std::string>();
      for (const auto& [k, v] : t.at("values").items()) rec.values.emplace_back(k, v.get<double>());
      for (const Json& c : t.at("checks")) {
        rec.checks.push_back(
            {c.at("name").get<std::string>(), c.at("margin").get<double>(), c.at("pass").get<bool>()});
      }
      rec.pass = t.at("pass").get<bool>();
      r.trials.push_back(std::move(rec));
    }
    if (j.contains("series")) {
      for (const Json& s : j.at("series")) {
        r.series.push_back({s.at("kind").get<std::string>(),
                            s.at("columns").get<std::vector<std::string>>(),
                            s.at("rows").get<std::vector<std::vector<double>>>()});
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

Report verify(const VerifyConfig& cfg) {
  validate_config(cfg);
  const CostFunction cost = parse_cost_spec(cfg.cost);
  switch (cfg.theorem) {
    case Theorem::kThm2_1: return suite_thm2_1(cfg, cost);
    case Theorem::kThm2_2: return suite_thm2_2(cfg, cost);
    case Theorem::kProp2_3: return suite_prop2_3(cfg, cost);
    case Theorem::kCor2_4: return suite_cor2_4(cfg, cost);
    case Theorem::kThm2_6: return suite_thm2_6(cfg, cost);
    case Theorem::kCor2_7: return suite_cor2_7(cfg, cost);
    case Theorem::kCor2_8: return suite_cor2_8(cfg, cost);
    case Theorem::kEq1_6: return suite_eq1_6(cfg, cost);
    case Theorem::kEq1_9_0416: return suite_eq1_9(cfg, cost);
    case Theorem::kEq1_11_0508: return suite_eq1_11(cfg, cost);
  }
  throw Error(ErrorCode::kConfigInvalid, "unhandled theorem");
}

std::string emit_plot_data(const Report& report, std::string_view kind) {
  if (kind != "eq1_6" && kind != "cor2_7" && kind != "cor2_8") {
    throw Error(ErrorCode::kUnknownKind, "unknown plot kind '" + std::string(kind) + "'");
  }
  if (report.trials.empty()) throw Error(ErrorCode::kEmptyReport, "report has no trials");
  for (const Series& s : report.series) {
    if (s.kind != kind) continue;
    std::string out;
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
      out += (c ? "," : "") + s.columns[c];
    }
    out += '\n';
    for (const std::vector<double>& row : s.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out += (c ? "," : "") + fmt(row[c]);
      }
      out += '\n';
    }
    return out;
  }
  throw Error(ErrorCode::kUnknownKind,
              "report for " + std::string(to_string(report.config.theorem)) + " carries no '" +
                  std::string(kind) + "' series");
}

}  // namespace lagot
