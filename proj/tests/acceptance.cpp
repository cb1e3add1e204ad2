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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lagot/error.hpp"
#include "lagot/generators.hpp"
#include "lagot/harness.hpp"

using namespace lagot;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

VerifyConfig make(Theorem t, const std::string& cost, int trials, double tol,
                  std::uint64_t seed, Index n_atoms = 5, Index dim = 2) {
  VerifyConfig cfg;
  cfg.theorem = t;
  cfg.cost = cost;
  cfg.trials = trials;
  cfg.tolerance = tol;
  cfg.seed = seed;
  cfg.n_atoms = n_atoms;
  cfg.dim = dim;
  return cfg;
}

double value_of(const TrialRecord& t, const std::string& name) {
  for (const auto& [k, v] : t.values) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kParseError, "report lacks value " + name);
}

// Runs cfg; folds failures into out and returns the report.
Report run(const VerifyConfig& cfg, Outcome& out, int& trial_count) {
  Report r = verify(cfg);
  trial_count += static_cast<int>(r.trials.size());
  if (!r.pass()) {
    out.pass = false;
    char buf[200];
    std::snprintf(buf, sizeof buf, " [%s/%s: %d/%zu pass, min margin %.3g]",
                  std::string(to_string(cfg.theorem)).c_str(), cfg.cost.c_str(), r.passed(),
                  r.trials.size(), r.min_margin());
    out.detail += buf;
  }
  return r;
}

// W1 on the line from the area between distribution functions.
double w1_line(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<std::pair<double, double>> events;
  for (Index i = 0; i < a.size(); ++i) events.emplace_back(a.point(i)(0), a.weight(i));
  for (Index j = 0; j < b.size(); ++j) events.emplace_back(b.point(j)(0), -b.weight(j));
  std::sort(events.begin(), events.end());
  double gap = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < events.size(); ++k) {
    gap += events[k].second;
    total += std::abs(gap) * (events[k + 1].first - events[k].first);
  }
  return total;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome modified_cost_recovers_transport() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  int trials = 0;
  const int per_dim[] = {17, 17, 16};
  for (const char* cost : {"power:0.3", "power:0.5", "power:0.9", "remark_iii"}) {
    for (Index d = 1; d <= 3; ++d) {
      run(make(Theorem::kThm2_1, cost, per_dim[d - 1], 1e-9, 100 + d, 5, d), out, trials);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 30.0) out.pass = false;
  out.detail = fmt("%g instances (50 per cost), %.2f s", trials, secs) + out.detail;
  return out;
}

Outcome both_modifiers_agree() {
  Outcome out;
  int trials = 0;
  for (const char* cost : {"power:0.3", "power:0.5", "power:0.9"}) {
    run(make(Theorem::kThm2_2, cost, 20, 1e-10, 200), out, trials);
  }
  out.detail = fmt("%g trials, 100 random paths per cost", trials) + out.detail;
  return out;
}

Outcome detour_beats_transport() {
  Outcome out;
  int trials = 0;
  const Report r = run(make(Theorem::kProp2_3, "remark_iii", 1, 1e-9, 300), out, trials);
  const TrialRecord& t = r.trials.front();
  const double t_expected = 2.0 * std::exp(-2.0);
  const double v_expected = 4.0 * std::exp(-4.0);
  const double tv = value_of(t, "T");
  const double v2 = value_of(t, "tilde2_upper");
  if (std::abs(tv - t_expected) > 1e-9 || std::abs(v2 - v_expected) > 1e-9 || tv - v2 < 0.19) {
    out.pass = false;
  }
  out.detail = fmt("T=%.12f detour=%.12f gap=%.6f", tv, v2, tv - v2) + out.detail;
  return out;
}

Outcome bounded_speed_matches_static() {
  Outcome out;
  int trials = 0;
  run(make(Theorem::kThm2_6, "power:0.5", 50, 1e-10, 400), out, trials);
  run(make(Theorem::kThm2_6, "remark_iii", 50, 1e-10, 401), out, trials);
  out.detail = fmt("%g triples, %g admissible ensembles", trials, 4.0 * trials) + out.detail;
  return out;
}

Outcome fixed_cap_closed_form() {
  Outcome out;
  int trials = 0;
  run(make(Theorem::kCor2_8, "power:0.5", 20, 1e-10, 500), out, trials);
  run(make(Theorem::kCor2_8, "affine_exp:0.3", 20, 1e-10, 501), out, trials);
  run(make(Theorem::kCor2_8, "remark_iii", 20, 1e-10, 502), out, trials);
  // Independent check on the line against the distribution-function W1.
  double worst = 0.0;
  const CostFunction cost = builtin("power", {0.5});
  for (std::uint64_t k = 0; k < 20; ++k) {
    const DiscreteMeasure m0 = random_measure(trial_seed(503, k), 1 + k % 5, 1, 2.0);
    const DiscreteMeasure m1 = random_measure(trial_seed(504, k), 1 + k % 4, 1, 2.0);
    const double r = std::max(m0.cross_diameter(m1), 1e-3) * (1.0 + 0.5 * static_cast<double>(k % 4));
    const double expected = cost(r) / r * w1_line(m0, m1);
    worst = std::max(worst, std::abs(solve_bounded(m0, m1, cost, r).value - expected));
  }
  if (worst > 1e-10) out.pass = false;
  out.detail = fmt("%g trials; 1-D W1 cross-check max err %.2e", trials, worst) + out.detail;
  return out;
}

Outcome unbounded_slope_limit() {
  Outcome out;
  int trials = 0;
  double worst_excess = 0.0;
  for (const char* cost : {"affine_exp:0.3", "affine_exp:1"}) {
    const Report r = run(make(Theorem::kCor2_7, cost, 10, 1e-10, 600), out, trials);
    for (const TrialRecord& t : r.trials) {
      double previous = INFINITY;
      for (const char* cap : {"1", "10", "100", "1000", "10000"}) {
        const double excess = value_of(t, std::string("R=") + cap + ":excess");
        if (excess > previous + 1e-10 || excess < -1e-10) out.pass = false;
        previous = excess;
      }
      worst_excess = std::max(worst_excess, previous);
    }
  }
  if (!(worst_excess < 1e-3)) out.pass = false;
  double worst_power = 0.0;
  const Report p = run(make(Theorem::kCor2_7, "power:0.5", 10, 1e-10, 601), out, trials);
  for (const TrialRecord& t : p.trials) {
    const double t1 = value_of(t, "T1");
    for (double cap : {100.0, 1000.0, 10000.0}) {
      char name[32];
      std::snprintf(name, sizeof name, "R=%g:value", cap);
      worst_power = std::max(worst_power, std::abs(value_of(t, name) - t1 / std::sqrt(cap)));
    }
  }
  if (worst_power > 1e-10) out.pass = false;
  out.detail = fmt("max excess at R=1e4 %.2e; sqrt-cost closed form err %.2e", worst_excess,
                   worst_power) + out.detail;
  return out;
}

Outcome time_change_identity() {
  Outcome out;
  int trials = 0;
  run(make(Theorem::kEq1_11_0508, "power:0.5", 20, 1e-12, 700), out, trials);
  run(make(Theorem::kEq1_11_0508, "remark_iii", 20, 1e-12, 701), out, trials);
  out.detail = fmt("%g random paths", 5.0 * trials) + out.detail;
  return out;
}

Outcome convex_case() {
  Outcome out;
  int trials = 0;
  const Report r = run(make(Theorem::kEq1_9_0416, "square", 3, 1e-9, 800), out, trials);
  const double lengths[] = {1.0, 2.0, 0.5};
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double expected = lengths[k] * lengths[k];
    for (const char* o : {"S1", "S2"}) {
      worst = std::max(worst, std::abs(value_of(r.trials[k], o) - expected));
    }
  }
  if (worst > 1e-9) out.pass = false;
  out.detail = fmt("3 instances, max |min - |d|^2| = %.2e", worst) + out.detail;
  return out;
}

Outcome control_identity() {
  Outcome out;
  int trials = 0;
  run(make(Theorem::kCor2_4, "power:0.5", 20, 1e-9, 900), out, trials);
  out.detail = fmt("%g triples, both modifiers", trials) + out.detail;
  return out;
}

Outcome solver_matches_enumeration() {
  Outcome out;
  double worst = 0.0;
  const char* costs[] = {"power:0.3", "power:0.5", "power:0.9", "remark_iii", "affine_exp:0.3"};
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(trial_seed(1000, k));
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const Index d = 1 + static_cast<Index>(rng() % 3);
    std::vector<RawAtom> a, b;
    for (Index i = 0; i < n; ++i) {
      a.push_back({random_point(rng, d, 2.0), 1.0 / static_cast<double>(n)});
      b.push_back({random_point(rng, d, 2.0), 1.0 / static_cast<double>(n)});
    }
    const DiscreteMeasure m0 = validate_measure(a, d);
    const DiscreteMeasure m1 = validate_measure(b, d);
    const CostFunction cost = parse_cost_spec(costs[k % 5]);
    worst = std::max(worst, std::abs(solve_mk(m0, m1, cost).value - brute_force_mk(m0, m1, cost).value));
  }
  if (worst > 1e-9) out.pass = false;
  out.detail = fmt("100 instances, max |lp - brute force| = %.2e", worst);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"modified cost L1 recovers the transport value", modified_cost_recovers_transport},
      {"L1 and L2 modified costs agree on monotone costs", both_modifiers_agree},
      {"detour undercuts transport for an eventually decreasing cost", detour_beats_transport},
      {"bounded-speed value equals its static form", bounded_speed_matches_static},
      {"fixed speed cap gives l(r)/r times W1", fixed_cap_closed_form},
      {"growing caps approach the asymptotic slope times W1", unbounded_slope_limit},
      {"time change turns the modified cost into the plain cost", time_change_identity},
      {"convex cost: scaled objectives bottom out at the direct cost", convex_case},
      {"terminal-cost control identity holds atomwise", control_identity},
      {"transport solver matches permutation enumeration", solver_matches_enumeration},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, criterion] : criteria) {
    ++index;
    Outcome o;
    try {
      o = criterion();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria pass\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
