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

#ifndef MEI_TESTS__FIXTURES_HPP_
#define MEI_TESTS__FIXTURES_HPP_

#include "mei/agent_state.hpp"
#include "mei/trajectory_io.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace mei::testing
{

inline AgentState agent(
  std::string id, double x, double y, double heading, double speed, double length = 4.0, double width = 2.0,
  AgentType type = AgentType::kVehicle, double t = 0.0)
{
  AgentState s;
  s.agent_id = std::move(id);
  s.t = Timestamp::from_seconds(t);
  s.x = x;
  s.y = y;
  s.heading = heading;
  s.speed = speed;
  s.length = length;
  s.width = width;
  s.type = type;
  return s;
}

// Centers 50 m apart on the x axis, closing at 20 m/s.
inline std::pair<AgentState, AgentState> head_on()
{
  return {agent("A", 0, 0, 0, 10), agent("B", 50, 0, std::numbers::pi, 10)};
}

// Same, but B's line of travel is 10 m to the side.
inline std::pair<AgentState, AgentState> head_on_offset()
{
  return {agent("A", 0, 0, 0, 10), agent("B", 50, 10, std::numbers::pi, 10)};
}

// B crosses A's path at right angles; both reach the origin region together.
inline std::pair<AgentState, AgentState> perpendicular()
{
  return {agent("A", 0, 0, 0, 10), agent("B", 20, -20, std::numbers::pi / 2, 10)};
}

/// Random two-agent constant-velocity configuration.
struct RandomPairGenerator
{
  explicit RandomPairGenerator(std::uint64_t seed, double extent = 100.0, double max_speed = 20.0)
  : rng(seed), position(-0.5 * extent, 0.5 * extent), speed(0.0, max_speed), size(0.5, 6.0),
    heading(-std::numbers::pi, std::numbers::pi)
  {
  }

  AgentState draw(const char * id)
  {
    return agent(id, position(rng), position(rng), heading(rng), speed(rng), size(rng), size(rng));
  }

  std::pair<AgentState, AgentState> operator()() { return {draw("A"), draw("B")}; }

  std::mt19937_64 rng;
  std::uniform_real_distribution<double> position;
  std::uniform_real_distribution<double> speed;
  std::uniform_real_distribution<double> size;
  std::uniform_real_distribution<double> heading;
};

/// Two agents on straight constant-velocity tracks sampled at 10 Hz.
inline io::Scenario straight_scenario(
  const std::string & id, const AgentState & a0, const AgentState & b0, int frames = 110, double dt = 0.1)
{
  io::Scenario sc;
  sc.scenario_id = id;
  for (const AgentState * s0 : {&a0, &b0}) {
    std::vector<AgentState> track;
    for (int k = 0; k < frames; ++k) {
      AgentState s = *s0;
      const double t = k * dt;
      s.t = Timestamp::from_seconds(t);
      s.x = s0->x + t * s0->speed * std::cos(s0->heading);
      s.y = s0->y + t * s0->speed * std::sin(s0->heading);
      track.push_back(s);
    }
    sc.agents.emplace(s0->agent_id, std::move(track));
  }
  sc.dt = dt;
  return sc;
}

}  // namespace mei::testing

#endif  // MEI_TESTS__FIXTURES_HPP_
