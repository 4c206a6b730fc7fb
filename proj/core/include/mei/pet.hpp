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

#ifndef MEI__PET_HPP_
#define MEI__PET_HPP_

#include "mei/agent_state.hpp"
#include "mei/metrics.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace mei::metrics
{

/// Occupancy of the conflict zone by one agent.
struct ZoneOccupancy
{
  Timestamp first_entry;
  Timestamp last_exit;
};

struct PetResult
{
  std::optional<double> pet;  ///< seconds
  std::size_t zone_cells = 0;
  std::optional<ZoneOccupancy> a;
  std::optional<ZoneOccupancy> b;
};

/// Post-encroachment time between two tracks.
///
/// The conflict zone is the set of raster cells (side cfg.pet_grid, centers
/// at ((i + 1/2) g, (j + 1/2) g)) covered by both agents' swept footprints;
/// a cell is covered at a frame when its center lies in the closed
/// footprint. PET is the first entry of the later agent minus the last exit
/// of the earlier one, 0 when both occupy the zone at a shared timestamp or
/// their occupancy intervals overlap, and empty when the zone is empty.
///
/// Throws mei::InputError if either track has fewer than two frames or is
/// not strictly time-sorted.
PetResult pet_detailed(
  std::span<const AgentState> track_a, std::span<const AgentState> track_b, const MetricsConfig & cfg);

std::optional<double> pet(
  std::span<const AgentState> track_a, std::span<const AgentState> track_b, const MetricsConfig & cfg);

}  // namespace mei::metrics

#endif  // MEI__PET_HPP_
