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

#ifndef MEI__CLASSIFIER_HPP_
#define MEI__CLASSIFIER_HPP_

#include "mei/agent_state.hpp"
#include "mei/metrics.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mei::classify
{

/// Ordered risk levels; comparison follows severity.
enum class RiskLevel : int {
  kNonConflict = 0,
  kPotentialConflict = 1,
  kCriticalConflict = 2,
  kCrash = 3,
};

std::string_view to_string(RiskLevel level) noexcept;
std::optional<RiskLevel> parse_risk_level(std::string_view text) noexcept;

/// Crash on footprint overlap (or zero TEM with InDepth >= d_safe);
/// otherwise NonConflict unless the Q gate is active, CriticalConflict when
/// TEM <= tem_star and InDepth >= 0, PotentialConflict for the rest.
RiskLevel classify_frame(const metrics::FrameMetrics & fm, const metrics::MetricsConfig & cfg);

/// One (scenario, agent pair). agent_a < agent_b lexicographically.
struct PairKey
{
  std::string scenario_id;
  std::string agent_a;
  std::string agent_b;

  friend auto operator<=>(const PairKey &, const PairKey &) = default;
  friend bool operator==(const PairKey &, const PairKey &) = default;
};

struct ConflictEvent
{
  PairKey key;
  std::optional<double> mei_max;
  std::optional<Timestamp> t_mei_max;
  std::optional<double> act_min;
  std::optional<Timestamp> t_act_min;
  std::optional<double> pet;
  RiskLevel peak_level = RiskLevel::kNonConflict;
  std::size_t frame_count = 0;
};

/// Aggregates a frame stream into an event. Frames are time-sorted first;
/// ties in the max/min go to the earliest timestamp and undefined values are
/// skipped. Throws mei::InputError on an empty stream.
ConflictEvent extract_event(
  PairKey key, std::span<const metrics::FrameMetrics> frames, std::optional<double> pet,
  const metrics::MetricsConfig & cfg);

/// Events in the analysed corpus carry a strictly positive MEI peak.
inline bool has_positive_mei(const ConflictEvent & e) { return e.mei_max && *e.mei_max > 0.0; }

struct PairFrames
{
  PairKey key;
  std::vector<metrics::FrameMetrics> frames;
};

struct CollisionRemoval
{
  PairKey key;
  Timestamp first_overlap;
};

struct FilterResult
{
  std::vector<PairFrames> kept;
  std::vector<CollisionRemoval> removed;
};

/// Drops every pair with at least one overlapping frame (closed-set contact
/// counts). Input order is preserved among kept pairs.
FilterResult filter_collisions(std::vector<PairFrames> pairs);

}  // namespace mei::classify

#endif  // MEI__CLASSIFIER_HPP_
