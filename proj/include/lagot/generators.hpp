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
#include <random>

#include "lagot/measures.hpp"
#include "lagot/paths.hpp"

namespace lagot {

using Rng = std::mt19937_64;

// Seed for trial `trial` of a run seeded with `seed`; independent streams per
// trial so results do not depend on evaluation order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

Point random_point(Rng& rng, Index dim, double radius);

/// Up to max_intervals disjoint intervals in [0,1] with total length at
/// least min_measure.
IntervalSet random_interval_set(Rng& rng, int max_intervals,
                                double min_measure);

/// Horizon-1 path with `pieces` random durations (each at least 0.05 / pieces)
/// and velocity coordinates uniform in [-max_speed, max_speed].
SteppedPath random_stepped_path(Rng& rng, const Point& start, int pieces,
                                double max_speed);

/// Random horizon-1 path from x to y: free velocities on all but the last
/// piece, which closes the gap.
SteppedPath random_path_between(Rng& rng, const Point& x, const Point& y,
                                int pieces, double max_speed);

}  // namespace lagot
