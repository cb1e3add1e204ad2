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

#include "lagot/json_io.hpp"

#include <fstream>
#include <vector>

#include "lagot/error.hpp"

namespace lagot {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    bad(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

}  // namespace

Point point_from_json(const Json& j) {
  if (!j.is_array()) bad("point must be an array of numbers");
  Point x(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    x(static_cast<Index>(k)) = number(j[k], "coordinate");
  }
  return x;
}

Json point_to_json(const Eigen::Ref<const Eigen::VectorXd>& x) {
  Json out = Json::array();
  for (Index k = 0; k < x.size(); ++k) out.push_back(x(k));
  return out;
}

Json to_json(const DiscreteMeasure& m) {
  Json atoms = Json::array();
  for (Index i = 0; i < m.size(); ++i) {
    atoms.push_back({{"x", point_to_json(m.point(i))}, {"w", m.weight(i)}});
  }
  return {{"dim", m.dim()}, {"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  const Index dim = count(field(j, "dim"), "dim");
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) bad("atoms must be an array");
  std::vector<RawAtom> raw;
  for (const Json& a : atoms) {
    raw.push_back({point_from_json(field(a, "x")), number(field(a, "w"), "weight")});
  }
  return validate_measure(raw, dim);
}

Json to_json(const CostFunction& cost) {
  return {{"name", cost.name()}, {"params", cost.params()}};
}

CostFunction cost_from_json(const Json& j) {
  if (j.is_string()) return parse_cost_spec(j.get<std::string>());
  const Json& name = field(j, "name");
  if (!name.is_string()) bad("cost name must be a string");
  std::vector<double> params;
  if (j.contains("params")) {
    if (!j.at("params").is_array()) bad("cost params must be an array");
    for (const Json& p : j.at("params")) params.push_back(number(p, "cost parameter"));
  }
  return builtin(name.get<std::string>(), params);
}

Json to_json(const SteppedPath& p) {
  Json pieces = Json::array();
  for (const Piece& piece : p.pieces()) {
    pieces.push_back({{"dt", piece.duration}, {"v", point_to_json(piece.velocity)}});
  }
  return {{"start", point_to_json(p.start())}, {"horizon", p.horizon()}, {"pieces", pieces}};
}

SteppedPath path_from_json(const Json& j) {
  const Point start = point_from_json(field(j, "start"));
  const double horizon = j.contains("horizon") ? number(j.at("horizon"), "horizon") : 1.0;
  const Json& pieces = field(j, "pieces");
  if (!pieces.is_array()) bad("pieces must be an array");
  std::vector<Piece> out;
  for (const Json& p : pieces) {
    out.push_back({number(field(p, "dt"), "dt"), point_from_json(field(p, "v"))});
  }
  return SteppedPath(start, std::move(out), horizon);
}

Json to_json(const TransportEnsemble& e) {
  Json members = Json::array();
  for (const Member& m : e.members()) {
    Json item = {{"weight", m.weight}};
    if (m.bound) item["bound"] = *m.bound;
    item["path"] = to_json(m.path);
    members.push_back(std::move(item));
  }
  return {{"members", members}};
}

TransportEnsemble ensemble_from_json(const Json& j) {
  const Json& members = field(j, "members");
  if (!members.is_array()) bad("members must be an array");
  std::vector<Member> out;
  for (const Json& m : members) {
    std::optional<double> bound;
    if (m.contains("bound") && !m.at("bound").is_null()) bound = number(m.at("bound"), "bound");
    out.push_back({number(field(m, "weight"), "weight"), path_from_json(field(m, "path")), bound});
  }
  return TransportEnsemble(std::move(out));
}

Json to_json(const Coupling& c) {
  Json rows = Json::array();
  for (Index i = 0; i < c.plan().rows(); ++i) rows.push_back(point_to_json(c.plan().row(i).transpose()));
  return {{"source", to_json(c.source())}, {"target", to_json(c.target())}, {"plan", rows}};
}

Json to_json(const MKSolution& sol) {
  return {{"value", sol.value}, {"method", to_string(sol.method)}, {"plan", to_json(sol.plan)}};
}

Json grid_to_json(const Eigen::MatrixXd& points) {
  Json out = Json::array();
  for (Index k = 0; k < points.cols(); ++k) out.push_back(point_to_json(points.col(k)));
  return {{"dim", points.rows()}, {"points", out}};
}

namespace {

Eigen::MatrixXd points_from_array(const Json& arr, Index dim) {
  if (!arr.is_array() || arr.empty()) bad("points must be a non-empty array");
  Eigen::MatrixXd points(dim, static_cast<Index>(arr.size()));
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const Point x = point_from_json(arr[k]);
    if (x.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "grid point of the wrong dimension");
    }
    points.col(static_cast<Index>(k)) = x;
  }
  return points;
}

}  // namespace

Eigen::MatrixXd grid_from_json(const Json& j) {
  const Json& arr = field(j, "points");
  if (!arr.is_array() || arr.empty()) bad("points must be a non-empty array");
  const Index dim = j.contains("dim") ? count(j.at("dim"), "dim")
                                      : static_cast<Index>(arr[0].size());
  return points_from_array(arr, dim);
}

Json to_json(const GridFunction& f) {
  return {{"points", grid_to_json(f.points()).at("points")}, {"values", point_to_json(f.values())}};
}

GridFunction grid_function_from_json(const Json& values, const Eigen::MatrixXd& points) {
  const Json& arr = values.is_array() ? values : field(values, "values");
  return GridFunction(points, point_from_json(arr));
}

GridFunction grid_function_from_json(const Json& j) {
  return grid_function_from_json(j, grid_from_json(j));
}

Json to_json(const ControlIdentityReport& r) {
  return {{"fl_values", r.fl_values}, {"selected", r.selected},
          {"lhs", r.lhs},             {"rhs", r.rhs},
          {"margin", r.margin},       {"oracle_min_margin", r.oracle_min_margin},
          {"note", r.note}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad("'" + path + "': " + e.what());
  }
}

}  // namespace lagot
