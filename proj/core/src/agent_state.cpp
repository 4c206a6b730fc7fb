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

#include "mei/agent_state.hpp"

#include "mei/errors.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace mei
{

Timestamp Timestamp::from_seconds(double seconds)
{
  if (!std::isfinite(seconds)) {
    throw InputError("timestamp must be finite");
  }
  return Timestamp{static_cast<std::int64_t>(std::llround(seconds * kTicksPerSecond))};
}

namespace
{
constexpr std::array<std::pair<AgentType, std::string_view>, 4> kTypeNames{{
  {AgentType::kVehicle, "vehicle"},
  {AgentType::kPedestrian, "pedestrian"},
  {AgentType::kCyclist, "cyclist"},
  {AgentType::kOther, "other"},
}};
}  // namespace

std::string_view to_string(AgentType type) noexcept
{
  for (const auto & [t, name] : kTypeNames) {
    if (t == type) {
      return name;
    }
  }
  return "other";
}

std::optional<AgentType> parse_agent_type(std::string_view text) noexcept
{
  for (const auto & [t, name] : kTypeNames) {
    if (name == text) {
      return t;
    }
  }
  return std::nullopt;
}

void validate(const AgentState & state)
{
  const std::array<std::pair<double, const char *>, 6> fields{{
    {state.x, "x"},
    {state.y, "y"},
    {state.speed, "speed"},
    {state.heading, "heading"},
    {state.length, "length"},
    {state.width, "width"},
  }};
  for (const auto & [value, name] : fields) {
    if (!std::isfinite(value)) {
      throw InputError(std::string(name) + " is not finite");
    }
  }
  if (state.speed < 0.0) {
    throw InputError("speed must be >= 0");
  }
  if (!(state.length > 0.0) || !(state.width > 0.0)) {
    throw InputError("length and width must be > 0");
  }
  if (state.agent_id.empty()) {
    throw InputError("agent_id is empty");
  }
}

}  // namespace mei
