// Copyright 2026 The MEI Metrics Authors
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

#include "mei/pet.hpp"

#include "mei/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace mei::metrics
{

namespace
{

using CellKey = std::int64_t;

constexpr double kCoverTolerance = 1e-9;  // m

CellKey pack(std::int64_t i, std::int64_t j)
{
  return (i << 32) ^ (j & 0xffffffffLL);
}

// Sorted keys of cells whose centers lie in the closed footprint.
std::vector<CellKey> rasterize(const AgentState & s, double grid)
{
  const auto box = geometry::corners(s.position(), s.heading, s.length, s.width);
  double min_x = box[0].x(), max_x = box[0].x();
  double min_y = box[0].y(), max_y = box[0].y();
  for (const auto & c : box) {
    min_x = std::min(min_x, c.x());
    max_x = std::max(max_x, c.x());
    min_y = std::min(min_y, c.y());
    max_y = std::max(max_y, c.y());
  }
  const auto i0 = static_cast<std::int64_t>(std::ceil(min_x / grid - 0.5));
  const auto i1 = static_cast<std::int64_t>(std::floor(max_x / grid - 0.5));
  const auto j0 = static_cast<std::int64_t>(std::ceil(min_y / grid - 0.5));
  const auto j1 = static_cast<std::int64_t>(std::floor(max_y / grid - 0.5));

  const geometry::Vec2 u = s.direction();
  const geometry::Vec2 n = u.perp();
  const double half_l = 0.5 * s.length + kCoverTolerance;
  const double half_w = 0.5 * s.width + kCoverTolerance;

  std::vector<CellKey> cells;
  for (std::int64_t i = i0; i <= i1; ++i) {
    for (std::int64_t j = j0; j <= j1; ++j) {
      const geometry::Vec2 c{(static_cast<double>(i) + 0.5) * grid, (static_cast<double>(j) + 0.5) * grid};
      const geometry::Vec2 d = c - s.position();
      if (std::abs(geometry::dot(d, u)) <= half_l && std::abs(geometry::dot(d, n)) <= half_w) {
        cells.push_back(pack(i, j));
      }
    }
  }
  return cells;
}

struct Sweep
{
  std::vector<std::vector<CellKey>> per_frame;
  std::vector<CellKey> swept;
};

Sweep sweep(std::span<const AgentState> track, double grid)
{
  Sweep out;
  out.per_frame.reserve(track.size());
  for (const AgentState & s : track) {
    std::vector<CellKey> cells = rasterize(s, grid);
    std::sort(cells.begin(), cells.end());
    out.swept.insert(out.swept.end(), cells.begin(), cells.end());
    out.per_frame.push_back(std::move(cells));
  }
  std::sort(out.swept.begin(), out.swept.end());
  out.swept.erase(std::unique(out.swept.begin(), out.swept.end()), out.swept.end());
  return out;
}

void check_track(std::span<const AgentState> track, const char * name)
{
  if (track.size() < 2) {
    throw InputError(std::string("PET needs at least two frames in ") + name);
  }
  for (std::size_t k = 1; k < track.size(); ++k) {
    if (!(track[k - 1].t < track[k].t)) {
      throw InputError(std::string(name) + " is not strictly time-sorted");
    }
  }
}

bool intersects(const std::vector<CellKey> & sorted_cells, const std::vector<CellKey> & zone)
{
  auto it = sorted_cells.begin();
  auto jt = zone.begin();
  while (it != sorted_cells.end() && jt != zone.end()) {
    if (*it < *jt) {
      ++it;
    } else if (*jt < *it) {
      ++jt;
    } else {
      return true;
    }
  }
  return false;
}

// Timestamps at which the agent occupies the zone.
std::vector<Timestamp> occupied_times(
  std::span<const AgentState> track, const Sweep & sw, const std::vector<CellKey> & zone)
{
  std::vector<Timestamp> times;
  for (std::size_t k = 0; k < track.size(); ++k) {
    if (intersects(sw.per_frame[k], zone)) {
      times.push_back(track[k].t);
    }
  }
  return times;
}

}  // namespace

PetResult pet_detailed(
  std::span<const AgentState> track_a, std::span<const AgentState> track_b, const MetricsConfig & cfg)
{
  check_track(track_a, "track_a");
  check_track(track_b, "track_b");
  cfg.validate();

  const Sweep sweep_a = sweep(track_a, cfg.pet_grid);
  const Sweep sweep_b = sweep(track_b, cfg.pet_grid);
  std::vector<CellKey> zone;
  std::set_intersection(
    sweep_a.swept.begin(), sweep_a.swept.end(), sweep_b.swept.begin(), sweep_b.swept.end(),
    std::back_inserter(zone));

  PetResult result;
  result.zone_cells = zone.size();
  if (zone.empty()) {
    return result;
  }
  const std::vector<Timestamp> in_a = occupied_times(track_a, sweep_a, zone);
  const std::vector<Timestamp> in_b = occupied_times(track_b, sweep_b, zone);
  if (in_a.empty() || in_b.empty()) {
    return result;
  }
  result.a = ZoneOccupancy{in_a.front(), in_a.back()};
  result.b = ZoneOccupancy{in_b.front(), in_b.back()};

  std::vector<Timestamp> shared;
  std::set_intersection(in_a.begin(), in_a.end(), in_b.begin(), in_b.end(), std::back_inserter(shared));
  if (!shared.empty()) {
    result.pet = 0.0;
    return result;
  }

  const ZoneOccupancy & first = result.a->first_entry <= result.b->first_entry ? *result.a : *result.b;
  const ZoneOccupancy & second = &first == &*result.a ? *result.b : *result.a;
  const std::int64_t gap = second.first_entry.ticks() - first.last_exit.ticks();
  result.pet = gap > 0 ? Timestamp::from_ticks(gap).seconds() : 0.0;
  return result;
}

std::optional<double> pet(
  std::span<const AgentState> track_a, std::span<const AgentState> track_b, const MetricsConfig & cfg)
{
  return pet_detailed(track_a, track_b, cfg).pet;
}

}  // namespace mei::metrics
