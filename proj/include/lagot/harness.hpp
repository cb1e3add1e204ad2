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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lagot/json_io.hpp"

namespace lagot {

enum class Theorem {
  kThm2_1,
  kThm2_2,
  kProp2_3,
  kCor2_4,
  kThm2_6,
  kCor2_7,
  kCor2_8,
  kEq1_6,
  kEq1_9_0416,
  kEq1_11_0508,
};

std::string_view to_string(Theorem t);
Theorem parse_theorem(std::string_view name);  // ConfigInvalid on unknown names
const std::vector<Theorem>& all_theorems();

struct VerifyConfig {
  Theorem theorem = Theorem::kThm2_1;
  std::uint64_t seed = 0;
  int trials = 20;
  Index n_atoms = 4;
  Index dim = 2;
  std::string cost = "power:0.5";
  double tolerance = 1e-9;
};

void validate_config(const VerifyConfig& cfg);
Json to_json(const VerifyConfig& cfg);
// Missing fields keep their defaults; "theorem" is required.
VerifyConfig config_from_json(const Json& j);

// A check passes iff margin >= 0. Equalities are recorded as two one-sided
// checks ("...:upper" and "...:lower").
struct Check {
  std::string name;
  double margin = 0.0;
  bool pass = false;
};

struct TrialRecord {
  int trial = 0;
  std::string digest;  // FNV-1a of the serialized trial inputs
  std::vector<std::pair<std::string, double>> values;
  std::vector<Check> checks;
  bool pass = true;

  void value(std::string name, double v);
  // |a - b| <= tol, as two one-sided margins.
  void equal(const std::string& name, double a, double b, double tol);
  // a >= b - tol.
  void at_least(const std::string& name, double a, double b, double tol);
  // a - b >= gap.
  void exceeds(const std::string& name, double a, double b, double gap);
};

struct Series {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline constexpr int kReportFormatVersion = 1;

struct Report {
  int format_version = kReportFormatVersion;
  VerifyConfig config;
  std::vector<TrialRecord> trials;
  std::vector<Series> series;

  int passed() const;
  bool pass() const;
  double min_margin() const;
  double max_margin() const;
};

Json to_json(const Report& r);
Report report_from_json(const Json& j);

std::string fnv1a_hex(std::string_view bytes);

// Default tolerance of strict-inequality suites.
inline constexpr double kStrictMargin = 1e-6;

// Runs the suite named by cfg.theorem. Refuses with AssumptionRefused when a
// sampled check of the suite's hypotheses fails.
Report verify(const VerifyConfig& cfg);

// Plot kinds: "eq1_6", "cor2_7", "cor2_8".
std::string emit_plot_data(const Report& report, std::string_view kind);

}  // namespace lagot
