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

// Command-line front end: solve-mk, eval, build-optimal, oracle, dual, verify, plot.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lagot/error.hpp"
#include "lagot/generators.hpp"
#include "lagot/harness.hpp"

namespace {

using namespace lagot;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool json = false;
  bool csv = false;
  std::string out;
};

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
  } else {
    out += prefix + "," + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw Error(ErrorCode::kParseError, "cannot write '" + g.out + "'");
  file << text;
}

void emit_json(const Globals& g, const Json& j) {
  if (g.csv) {
    std::string out = "key,value\n";
    flatten(j, "", out);
    emit(g, out);
  } else {
    emit(g, j.dump(2) + "\n");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad number '" + item + "' in list");
    }
  }
  return out;
}

Point parse_point(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.empty()) throw Error(ErrorCode::kParseError, "empty point");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

Modifier parse_modifier(int i) {
  if (i != 1 && i != 2) throw Error(ErrorCode::kBadParam, "modifier must be 1 or 2");
  return i == 1 ? Modifier::kN1 : Modifier::kN2;
}

std::string report_csv(const Report& r) {
  std::string out = "trial,digest,pass,min_margin\n";
  for (const TrialRecord& t : r.trials) {
    double m = 0.0;
    bool first = true;
    for (const Check& c : t.checks) {
      m = first ? c.margin : std::min(m, c.margin);
      first = false;
    }
    std::ostringstream row;
    row.precision(17);
    row << t.trial << "," << t.digest << "," << (t.pass ? 1 : 0) << "," << m << "\n";
    out += row.str();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian optimal transport with non-convex costs: solvers and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance for checks")->capture_default_str();
  auto* json_flag = app.add_flag("--json", g.json, "JSON output (default)");
  app.add_flag("--csv", g.csv, "CSV output")->excludes(json_flag);
  app.add_option("--out", g.out, "Write output to PATH instead of stdout");

  // solve-mk
  std::string p0, p1, cost_spec = "power:0.5", method = "lp";
  std::optional<double> max_arc;
  auto* solve = app.add_subcommand("solve-mk", "Solve the discrete transport problem");
  solve->add_option("--p0", p0, "Initial measure JSON")->required();
  solve->add_option("--p1", p1, "Final measure JSON")->required();
  solve->add_option("--cost", cost_spec, "Cost spec, e.g. power:0.5")->capture_default_str();
  solve->add_option("--max-arc-length", max_arc, "Forbid pairs farther apart than r");
  solve->add_option("--method", method, "lp or brute_force")->capture_default_str();

  // eval
  std::string ensemble_file, path_file, objective = "plain";
  std::optional<double> bound;
  auto* eval = app.add_subcommand("eval", "Evaluate an ensemble or a single path");
  auto* ens_opt = eval->add_option("--ensemble", ensemble_file, "Ensemble JSON");
  eval->add_option("--path", path_file, "Single path JSON (weight 1)")->excludes(ens_opt);
  eval->add_option("--cost", cost_spec, "Cost spec")->capture_default_str();
  eval->add_option("--objective", objective, "plain, L1, L2, S1, S2, bounded or TV")
      ->capture_default_str();
  eval->add_option("--bound", bound, "Speed cap for --path");

  // build-optimal
  std::string which = "2.1", sets = "full";
  auto* build = app.add_subcommand("build-optimal", "Build an optimal ensemble");
  build->add_option("--theorem", which, "2.1 (modified cost) or 2.6 (speed cap)")
      ->check(CLI::IsMember({"2.1", "2.6"}))
      ->capture_default_str();
  build->add_option("--p0", p0, "Initial measure JSON")->required();
  build->add_option("--p1", p1, "Final measure JSON")->required();
  build->add_option("--cost", cost_spec, "Cost spec")->capture_default_str();
  build->add_option("--bound", bound, "Speed cap M, required for the speed-cap construction");
  build->add_option("--sets", sets, "Motion sets for 2.1: full or random")
      ->check(CLI::IsMember({"full", "random"}))
      ->capture_default_str();

  // oracle
  std::string x_text, y_text, grid_text = "0,1,2,4";
  int pieces = 4;
  std::optional<double> cap;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum over stepped paths");
  oracle->add_option("--x", x_text, "Start point, comma separated")->required();
  oracle->add_option("--y", y_text, "End point, comma separated")->required();
  oracle->add_option("--cost", cost_spec, "Cost spec")->capture_default_str();
  oracle->add_option("--objective", objective, "plain, L1, L2, S1 or S2")->capture_default_str();
  oracle->add_option("--pieces", pieces, "Number of equal pieces K")->capture_default_str();
  oracle->add_option("--grid", grid_text, "Speed multiples of |y-x|")->capture_default_str();
  oracle->add_option("--cap", cap, "Speed cap M");

  // dual
  std::string f_file, grid_file;
  int modifier = 1;
  auto* dual = app.add_subcommand("dual", "Infimal convolution and the control identity");
  dual->add_option("--f", f_file, "Grid function JSON (values, optionally points)")->required();
  dual->add_option("--p0", p0, "Initial measure JSON")->required();
  dual->add_option("--cost", cost_spec, "Cost spec")->capture_default_str();
  dual->add_option("--grid", grid_file, "Grid points JSON");
  dual->add_option("--modifier", modifier, "1 or 2")->capture_default_str();

  // verify
  std::string theorem, config_file;
  int trials = 20;
  Index n_atoms = 4, dim = 2;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  auto* thm_opt = verify_cmd->add_option("--theorem", theorem, "Suite name, e.g. thm2_1");
  auto* cfg_opt = verify_cmd->add_option("--config", config_file, "Config JSON");
  auto* trials_opt = verify_cmd->add_option("--trials", trials, "Number of trials");
  auto* atoms_opt = verify_cmd->add_option("--n-atoms", n_atoms, "Max atoms per measure");
  auto* dim_opt = verify_cmd->add_option("--dim", dim, "Dimension");
  auto* cost_opt = verify_cmd->add_option("--cost", cost_spec, "Cost spec");

  // plot
  std::string report_file, kind;
  auto* plot = app.add_subcommand("plot", "Emit plot data as CSV");
  plot->add_option("--kind", kind, "eq1_6, cor2_7 or cor2_8")->required();
  plot->add_option("--report", report_file, "Report JSON from verify");
  plot->add_option("--cost", cost_spec, "Cost spec when no report is given");
  plot->add_option("--trials", trials, "Trials when no report is given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (*solve) {
      const DiscreteMeasure m0 = measure_from_json(read_json_file(p0));
      const DiscreteMeasure m1 = measure_from_json(read_json_file(p1));
      const CostFunction cost = parse_cost_spec(cost_spec);
      ArcFilter forbidden;
      if (max_arc) {
        const double r = *max_arc;
        forbidden = [&, r](Index i, Index j) { return (m0.point(i) - m1.point(j)).norm() > r; };
      }
      if (method != "lp" && method != "brute_force") {
        throw Error(ErrorCode::kBadParam, "unknown method '" + method + "'");
      }
      if (method == "brute_force" && max_arc) {
        throw Error(ErrorCode::kBadParam, "--max-arc-length needs --method lp");
      }
      const MKSolution sol =
          method == "lp" ? solve_mk(m0, m1, cost, forbidden) : brute_force_mk(m0, m1, cost);
      if (g.csv) {
        std::ostringstream out;
        out.precision(17);
        for (Index i = 0; i < sol.plan.plan().rows(); ++i) {
          for (Index j = 0; j < sol.plan.plan().cols(); ++j) {
            out << (j ? "," : "") << sol.plan.plan()(i, j);
          }
          out << "\n";
        }
        emit(g, out.str());
      } else {
        Json j = to_json(sol);
        emit(g, j.dump(2) + "\n");
      }
      return kExitPass;
    }

    if (*eval) {
      const CostFunction cost = parse_cost_spec(cost_spec);
      std::optional<TransportEnsemble> e;
      if (!ensemble_file.empty()) {
        e.emplace(ensemble_from_json(read_json_file(ensemble_file)));
      } else if (!path_file.empty()) {
        e.emplace(TransportEnsemble({{1.0, path_from_json(read_json_file(path_file)), bound}}));
      } else {
        throw Error(ErrorCode::kBadParam, "eval needs --ensemble or --path");
      }
      double value = 0.0;
      if (objective == "TV") {
        value = eval_tv(induced_triple(*e), cost);
      } else if (objective == "bounded") {
        value = eval_bounded(*e, cost);
      } else {
        const Objective o = parse_objective(objective);
        for (const Member& m : e->members()) value += m.weight * path_objective(m.path, cost, o);
      }
      Json flags = Json::array();
      for (std::size_t k = 0; k < e->size(); ++k) {
        if (is_closed_loop(e->members()[k].path)) flags.push_back(k);
      }
      emit_json(g, {{"objective", objective},
                    {"cost", cost.spec()},
                    {"value", value},
                    {"closed_loop_members", flags}});
      return kExitPass;
    }

    if (*build) {
      const DiscreteMeasure m0 = measure_from_json(read_json_file(p0));
      const DiscreteMeasure m1 = measure_from_json(read_json_file(p1));
      const CostFunction cost = parse_cost_spec(cost_spec);
      if (which == "2.1") {
        const MKSolution sol = solve_mk(m0, m1, cost);
        Rng rng(g.seed);
        const TransportEnsemble e = build_opt_tilde(sol, [&](Index, Index) {
          return sets == "full" ? IntervalSet::full() : random_interval_set(rng, 4, 0.05);
        });
        emit_json(g, {{"theorem", which},
                      {"T", sol.value},
                      {"tilde1", eval_tilde(e, cost, Modifier::kN1)},
                      {"ensemble", to_json(e)}});
      } else {
        if (!bound) throw Error(ErrorCode::kBadParam, "--theorem 2.6 needs --bound");
        const BoundedSolution b = solve_bounded(m0, m1, cost, *bound);
        emit_json(g, {{"theorem", which},
                      {"bound", *bound},
                      {"T_V", b.value},
                      {"constrained_T1", b.constrained_t1},
                      {"bounded", eval_bounded(b.ensemble, cost)},
                      {"ensemble", to_json(b.ensemble)}});
      }
      return kExitPass;
    }

    if (*oracle) {
      const CostFunction cost = parse_cost_spec(cost_spec);
      const std::vector<double> grid = parse_list(grid_text);
      const OracleResult r = oracle_min_path(parse_point(x_text), parse_point(y_text), cost,
                                             parse_objective(objective), pieces, grid, cap);
      emit_json(g, {{"value", r.value}, {"speeds", r.speeds}});
      return kExitPass;
    }

    if (*dual) {
      const DiscreteMeasure m0 = measure_from_json(read_json_file(p0));
      const Json fj = read_json_file(f_file);
      const GridFunction f = grid_file.empty()
                                 ? grid_function_from_json(fj)
                                 : grid_function_from_json(fj, grid_from_json(read_json_file(grid_file)));
      const ControlIdentityReport r =
          verify_control_identity(m0, f, parse_cost_spec(cost_spec), parse_modifier(modifier));
      emit_json(g, to_json(r));
      return r.lhs == r.rhs && r.oracle_min_margin >= -g.tol ? kExitPass : kExitFail;
    }

    if (*verify_cmd) {
      VerifyConfig cfg;
      if (*cfg_opt) {
        cfg = config_from_json(read_json_file(config_file));
      } else if (!*thm_opt) {
        throw Error(ErrorCode::kConfigInvalid, "verify needs --theorem or --config");
      }
      if (*thm_opt) cfg.theorem = parse_theorem(theorem);
      if (app.get_option("--seed")->count() > 0 || !*cfg_opt) cfg.seed = g.seed;
      if (app.get_option("--tol")->count() > 0 || !*cfg_opt) cfg.tolerance = g.tol;
      if (*trials_opt) cfg.trials = trials;
      if (*atoms_opt) cfg.n_atoms = n_atoms;
      if (*dim_opt) cfg.dim = dim;
      if (*cost_opt) cfg.cost = cost_spec;
      const Report r = verify(cfg);
      emit(g, g.csv ? report_csv(r) : to_json(r).dump(2) + "\n");
      std::cerr << to_string(cfg.theorem) << ": " << r.passed() << "/" << r.trials.size()
                << " trials pass, min margin " << r.min_margin() << "\n";
      return r.pass() ? kExitPass : kExitFail;
    }

    if (*plot) {
      Report r;
      if (!report_file.empty()) {
        r = report_from_json(read_json_file(report_file));
      } else {
        VerifyConfig cfg;
        cfg.theorem = parse_theorem(kind);
        cfg.seed = g.seed;
        cfg.tolerance = g.tol;
        cfg.trials = plot->get_option("--trials")->count() ? trials : 1;
        if (plot->get_option("--cost")->count()) cfg.cost = cost_spec;
        if (cfg.theorem == Theorem::kCor2_7 && !plot->get_option("--cost")->count()) {
          cfg.cost = "affine_exp:0.3";
        }
        r = verify(cfg);
      }
      emit(g, emit_plot_data(r, kind));
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
