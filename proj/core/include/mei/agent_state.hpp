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

#ifndef MEI__AGENT_STATE_HPP_
#define MEI__AGENT_STATE_HPP_

#include "mei/geometry.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mei
{

/// Time on a 0.1 ms integer grid so that 10 Hz frames compare exactly.
class Timestamp
{
public:
  static constexpr std::int64_t kTicksPerSecond = 10000;

  constexpr Timestamp() = default;
  static constexpr Timestamp from_ticks(std::int64_t ticks) { return Timestamp{ticks}; }
  /// Rounds to the nearest tick.
  static Timestamp from_seconds(double seconds);

  constexpr std::int64_t ticks() const noexcept { return ticks_; }
  constexpr double seconds() const noexcept
  {
    return static_cast<double>(ticks_) / static_cast<double>(kTicksPerSecond);
  }

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

private:
  constexpr explicit Timestamp(std::int64_t ticks) : ticks_(ticks) {}
  std::int64_t ticks_ = 0;
};

enum class AgentType { kVehicle, kPedestrian, kCyclist, kOther };

std::string_view to_string(AgentType type) noexcept;
std::optional<AgentType> parse_agent_type(std::string_view text) noexcept;

/// Default footprint for pedestrians whose dimensions are not recorded.
inline constexpr double kDefaultPedestrianLength = 0.6;
inline constexpr double kDefaultPedestrianWidth = 0.6;

/// Pose, speed and footprint of one agent at one instant. The center is the
/// geometric center of the footprint; heading is radians CCW from +x.
struct AgentState
{
  std::string agent_id;
  Timestamp t;
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;
  AgentType type = AgentType::kVehicle;

  geometry::Vec2 position() const { return {x, y}; }
  geometry::Vec2 velocity() const { return geometry::Vec2::from_angle(heading) * speed; }
  geometry::Vec2 direction() const { return geometry::Vec2::from_angle(heading); }
  geometry::OrientedBox footprint() const { return {position(), heading, length, width}; }

  friend bool operator==(const AgentState &, const AgentState &) = default;
};

/// Throws mei::InputError describing the first violated invariant
/// (non-finite pose, negative speed, non-positive footprint).
void validate(const AgentState & state);

}  // namespace mei

#endif  // MEI__AGENT_STATE_HPP_
