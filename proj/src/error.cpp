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

#include "lagot/error.hpp"

namespace lagot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMeasure: return "EmptyMeasure";
    case ErrorCode::kWeightSumMismatch: return "WeightSumMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidCoupling: return "InvalidCoupling";
    case ErrorCode::kUnknownCost: return "UnknownCost";
    case ErrorCode::kBadParam: return "BadParam";
    case ErrorCode::kNonMonotoneSlope: return "NonMonotoneSlope";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnequalWeights: return "UnequalWeights";
    case ErrorCode::kBadHorizon: return "BadHorizon";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kInvalidIntervalSet: return "InvalidIntervalSet";
    case ErrorCode::kDegenerateSet: return "DegenerateSet";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kCoincidentPoints: return "CoincidentPoints";
    case ErrorCode::kInvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::kMissingBound: return "MissingBound";
    case ErrorCode::kBoundViolated: return "BoundViolated";
    case ErrorCode::kInfeasibleBound: return "InfeasibleBound";
    case ErrorCode::kNoFeasiblePath: return "NoFeasiblePath";
    case ErrorCode::kInvalidGridFunction: return "InvalidGridFunction";
    case ErrorCode::kHypothesisNotDeclared: return "HypothesisNotDeclared";
    case ErrorCode::kAssumptionRefused: return "AssumptionRefused";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kUnknownKind: return "UnknownKind";
    case ErrorCode::kEmptyReport: return "EmptyReport";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lagot
