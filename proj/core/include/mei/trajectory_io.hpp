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

#ifndef MEI__TRAJECTORY_IO_HPP_
#define MEI__TRAJECTORY_IO_HPP_

#include "mei/agent_state.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mei::io
{

/// All agents of one recorded scenario, each track strictly time-sorted.
struct Scenario
{
  std::string scenario_id;
  std::map<std::string, std::vector<AgentState>> agents;
  /// Nominal frame spacing (median over tracks), empty for single-frame data.
  std::optional<double> dt;

  double duration() const;
  friend bool operator==(const Scenario &, const Scenario &) = default;
};

struct Diagnostic
{
  enum class Severity { kWarning, kError };

  Severity severity = Severity::kError;
  std::size_t line = 0;  ///< 0 when not tied to a line
  std::string scenario_id;
  std::string agent_id;
  std::string message;
};

std::string format(const Diagnostic & d);

struct ParseResult
{
  std::vector<Scenario> scenarios;  ///< sorted by scenario_id
  std::vector<Diagnostic> diagnostics;

  std::size_t error_count() const;
};

/// Canonical column set, in output order.
inline constexpr std::string_view kCanonicalHeader =
  "scenario_id,agent_id,agent_type,t,x,y,speed,heading,length,width";

/// Reads the canonical comma-separated trajectory format.
///
/// Header columns may appear in any order; extra columns are ignored. Lines
/// starting with '#' are comments. Invalid rows are reported in the
/// diagnostics and skipped. Empty speed/heading fields are derived from
/// positions by central differences. Throws mei::SchemaError if a required
/// column is absent.
ParseResult parse_canonical(std::istream & in);
ParseResult parse_canonical(std::string_view text);

/// Writes scenarios in the canonical format. Doubles use the shortest
/// representation that round-trips exactly.
void write_canonical(std::ostream & out, const std::vector<Scenario> & scenarios);

/// Parses a decimal seconds literal with at most four fractional digits
/// into ticks. Returns nullopt on malformed or negative input.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// Shortest round-trip decimal form of a finite double.
std::string format_double(double value);

/// Resamples every track onto multiples of `dt` inside its own time span.
/// Positions and speed are interpolated linearly, heading along the shorter
/// arc. Throws mei::InputError if dt is not a positive multiple of 0.1 ms or
/// a track has fewer than two states.
Scenario resample(const Scenario & scenario, double dt);

/// Fills missing speed/heading from positions and flags gaps; shared by the
/// canonical parser and the dataset adapter.
struct TrackFixups
{
  std::vector<bool> speed_missing;
  std::vector<bool> heading_missing;
};

void finalize_track(
  const std::string & scenario_id, std::vector<AgentState> & track, const TrackFixups & fixups,
  std::vector<Diagnostic> & diagnostics);

/// Median spacing over all tracks of a scenario.
std::optional<double> nominal_dt(const Scenario & scenario);

}  // namespace mei::io

#endif  // MEI__TRAJECTORY_IO_HPP_
