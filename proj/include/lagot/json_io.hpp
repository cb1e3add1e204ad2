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

#include <string>

#include "json.hpp"
#include "lagot/costs.hpp"
#include "lagot/duality.hpp"
#include "lagot/ensembles.hpp"
#include "lagot/measures.hpp"
#include "lagot/mk_solver.hpp"
#include "lagot/paths.hpp"

namespace lagot {

// Insertion-ordered so that dumps are reproducible field for field.
using Json = nlohmann::ordered_json;

// {"dim": d, "atoms": [{"x": [...], "w": w}, ...]}
Json to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j);

// {"name": "power", "params": [0.5]}; a bare "power:0.5" string is accepted too.
Json to_json(const CostFunction& cost);
CostFunction cost_from_json(const Json& j);

// {"start": [...], "horizon": T, "pieces": [{"dt": dt, "v": [...]}, ...]}
Json to_json(const SteppedPath& p);
SteppedPath path_from_json(const Json& j);

// {"members": [{"weight": w, "bound": M, "path": {...}}, ...]}; bound optional.
Json to_json(const TransportEnsemble& e);
TransportEnsemble ensemble_from_json(const Json& j);

// {"source": m0, "target": m1, "plan": [[...], ...]}
Json to_json(const Coupling& c);
Json to_json(const MKSolution& sol);

// Grid points as {"dim": d, "points": [[...], ...]}.
Json grid_to_json(const Eigen::MatrixXd& points);
Eigen::MatrixXd grid_from_json(const Json& j);

// {"points": [[...], ...], "values": [...]}; the points may come from a
// separate grid file instead.
Json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);
GridFunction grid_function_from_json(const Json& values, const Eigen::MatrixXd& points);

Json to_json(const ControlIdentityReport& r);

Point point_from_json(const Json& j);
Json point_to_json(const Eigen::Ref<const Eigen::VectorXd>& x);

Json read_json_file(const std::string& path);

}  // namespace lagot
