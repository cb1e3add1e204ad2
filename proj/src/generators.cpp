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

#include "lagot/generators.hpp"

#include <algorithm>
#include <vector>

#include "lagot/error.hpp"

namespace lagot {

namespace {

std::vector<double> random_durations(Rng& rng, int pieces) {
  if (pieces < 1) throw Error(ErrorCode::kBadParam, "need at least one piece");
  const double floor = 0.05 / pieces;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(pieces));
  double total = 0.0;
  for (double& r : raw) {
    r = unit(rng);
    total += r;
  }
  const double free_mass = 1.0 - floor * pieces;
  double used = 0.0;
  for (int k = 0; k + 1 < pieces; ++k) {
    raw[k] = floor + free_mass * raw[k] / total;
    used += raw[k];
  }
  raw.back() = 1.0 - used;
  return raw;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Point random_point(Rng& rng, Index dim, double radius) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  Point x(dim);
  for (Index k = 0; k < dim; ++k) x(k) = coord(rng);
  return x;
}

IntervalSet random_interval_set(Rng& rng, int max_intervals,
                                double min_measure) {
  if (max_intervals < 1 || !(min_measure > 0.0) || !(min_measure <= 1.0)) {
    throw Error(ErrorCode::kBadParam,
                "random_interval_set needs max_intervals >= 1 and "
                "min_measure in (0,1]");
  }
  std::uniform_int_distribution<int> count_dist(1, max_intervals);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int count = count_dist(rng);
  // Cut [0,1] at 2*count sorted points; keep every other gap, then grow the
  // kept intervals until they reach min_measure.
  std::vector<double> cuts(static_cast<std::size_t>(2 * count));
  for (double& c : cuts) c = unit(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> out;
  double total = 0.0;
  for (int k = 0; k < count; ++k) {
    const double a = cuts[2 * k];
    const double b = cuts[2 * k + 1];
    if (b > a) {
      out.emplace_back(a, b);
      total += b - a;
    }
  }
  if (total < min_measure) {
    // Fall back to a single interval of random placement.
    const double len = min_measure + (1.0 - min_measure) * unit(rng);
    const double start = (1.0 - len) * unit(rng);
    return IntervalSet({{start, std::min(1.0, start + len)}});
  }
  return IntervalSet(std::move(out));
}

SteppedPath random_stepped_path(Rng& rng, const Point& start, int pieces,
                                double max_speed) {
  const std::vector<double> dts = random_durations(rng, pieces);
  std::vector<Piece> steps;
  for (double dt : dts) {
    steps.push_back({dt, random_point(rng, start.size(), max_speed)});
  }
  return SteppedPath(start, std::move(steps));
}

SteppedPath random_path_between(Rng& rng, const Point& x, const Point& y,
                                int pieces, double max_speed) {
  const std::vector<double> dts = random_durations(rng, pieces);
  std::vector<Piece> steps;
  Point covered = Point::Zero(x.size());
  for (int k = 0; k + 1 < pieces; ++k) {
    Point v = random_point(rng, x.size(), max_speed);
    covered += dts[k] * v;
    steps.push_back({dts[k], std::move(v)});
  }
  steps.push_back({dts.back(), (y - x - covered) / dts.back()});
  return SteppedPath(x, std::move(steps));
}

}  // namespace lagot
