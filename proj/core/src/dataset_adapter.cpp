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

#include "mei/dataset_adapter.hpp"

#include "mei/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace mei::io
{

namespace
{

constexpr double kTimestepSeconds = 0.1;
constexpr double kStationarySpeed = 0.1;  // m/s

enum Column : std::size_t {
  kScenario, kTrack, kObjectType, kTimestep, kPosX, kPosY, kHeading, kVelX, kVelY, kRequiredCount
};

constexpr std::array<std::string_view, kRequiredCount> kRequired{
  "scenario_id", "track_id", "object_type", "timestep", "position_x", "position_y",
  "heading", "velocity_x", "velocity_y"};

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = line.find(',', start)) != std::string_view::npos; start = pos + 1) {
    out.push_back(trim(line.substr(start, pos - start)));
  }
  out.push_back(trim(line.substr(start)));
  return out;
}

std::optional<double> to_double(std::string_view text)
{
  double v = 0.0;
  const char * end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

struct Row
{
  AgentState state;
  std::size_t line;
};

}  // namespace

DefaultFootprint default_footprint(std::string_view object_type) noexcept
{
  if (object_type == "pedestrian") {
    return {kDefaultPedestrianLength, kDefaultPedestrianWidth};
  }
  if (object_type == "bus") {
    return {12.0, 2.6};
  }
  if (object_type == "cyclist" || object_type == "motorcyclist" || object_type == "riderless_bicycle") {
    return {2.0, 0.7};
  }
  if (object_type == "vehicle") {
    return {4.8, 2.0};
  }
  return {1.0, 1.0};
}

AgentType map_object_type(std::string_view object_type) noexcept
{
  if (object_type == "vehicle" || object_type == "bus") {
    return AgentType::kVehicle;
  }
  if (object_type == "pedestrian") {
    return AgentType::kPedestrian;
  }
  if (object_type == "cyclist" || object_type == "motorcyclist" || object_type == "riderless_bicycle") {
    return AgentType::kCyclist;
  }
  return AgentType::kOther;
}

ParseResult adapt_external(std::istream & in)
{
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, kRequiredCount>> index;
  std::optional<std::size_t> length_col;
  std::optional<std::size_t> width_col;
  std::size_t header_width = 0;
  std::map<std::string, std::map<std::string, std::vector<Row>>> grouped;

  const auto error = [&](std::size_t ln, std::string msg) {
    result.diagnostics.push_back({Diagnostic::Severity::kError, ln, "", "", std::move(msg)});
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) {
      continue;
    }
    if (view.front() == '#') {
      constexpr std::string_view kTag = "# layout:";
      if (view.substr(0, kTag.size()) == kTag) {
        const std::string_view tag = trim(view.substr(kTag.size()));
        if (tag != kLateralConflictLayout) {
          throw UnsupportedFormatError(
            "unsupported dataset layout '" + std::string(tag) + "' (expected " +
            std::string(kLateralConflictLayout) + ")");
        }
      }
      continue;
    }
    const auto fields = split(view);
    if (!index) {
      std::array<std::size_t, kRequiredCount> idx{};
      std::string missing;
      for (std::size_t c = 0; c < kRequiredCount; ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kRequired[c]);
        if (it == fields.end()) {
          missing += (missing.empty() ? "" : ", ") + std::string(kRequired[c]);
          continue;
        }
        idx[c] = static_cast<std::size_t>(it - fields.begin());
      }
      if (!missing.empty()) {
        throw UnsupportedFormatError("dataset export header lacks column(s): " + missing);
      }
      if (auto it = std::find(fields.begin(), fields.end(), "length"); it != fields.end()) {
        length_col = static_cast<std::size_t>(it - fields.begin());
      }
      if (auto it = std::find(fields.begin(), fields.end(), "width"); it != fields.end()) {
        width_col = static_cast<std::size_t>(it - fields.begin());
      }
      index = idx;
      header_width = fields.size();
      continue;
    }
    if (fields.size() != header_width) {
      error(line_no, "expected " + std::to_string(header_width) + " fields, got " + std::to_string(fields.size()));
      continue;
    }
    const auto field = [&](Column c) { return fields[(*index)[c]]; };

    Row row{{}, line_no};
    AgentState & s = row.state;
    const std::string scenario_id(field(kScenario));
    s.agent_id = std::string(field(kTrack));
    const std::string_view object_type = field(kObjectType);
    s.type = map_object_type(object_type);

    int timestep = 0;
    const std::string_view ts = field(kTimestep);
    if (auto [p, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), timestep);
        ec != std::errc{} || p != ts.data() + ts.size() || timestep < 0) {
      error(line_no, "invalid timestep '" + std::string(ts) + "'");
      continue;
    }
    s.t = Timestamp::from_seconds(timestep * kTimestepSeconds);

    const auto px = to_double(field(kPosX));
    const auto py = to_double(field(kPosY));
    const auto heading = to_double(field(kHeading));
    const auto vx = to_double(field(kVelX));
    const auto vy = to_double(field(kVelY));
    if (!px || !py || !heading || !vx || !vy || scenario_id.empty() || s.agent_id.empty()) {
      error(line_no, "missing, malformed or non-finite kinematic field");
      continue;
    }
    s.x = *px;
    s.y = *py;
    s.heading = geometry::normalize_angle(*heading);
    s.speed = std::hypot(*vx, *vy);

    const DefaultFootprint fallback = default_footprint(object_type);
    s.length = fallback.length;
    s.width = fallback.width;
    if (length_col && !fields[*length_col].empty()) {
      const auto l = to_double(fields[*length_col]);
      if (!l || !(*l > 0.0)) {
        error(line_no, "invalid length");
        continue;
      }
      s.length = *l;
    }
    if (width_col && !fields[*width_col].empty()) {
      const auto w = to_double(fields[*width_col]);
      if (!w || !(*w > 0.0)) {
        error(line_no, "invalid width");
        continue;
      }
      s.width = *w;
    }
    grouped[scenario_id][s.agent_id].push_back(std::move(row));
  }

  if (!index) {
    throw UnsupportedFormatError("dataset export has no header line");
  }

  for (auto & [scenario_id, tracks] : grouped) {
    if (tracks.find(std::string(kAvTrackId)) == tracks.end()) {
      result.diagnostics.push_back(
        {Diagnostic::Severity::kWarning, 0, scenario_id, "", "no AV track; scenario skipped"});
      continue;
    }
    Scenario scenario;
    scenario.scenario_id = scenario_id;
    for (auto & [track_id, rows] : tracks) {
      std::stable_sort(rows.begin(), rows.end(), [](const Row & l, const Row & r) { return l.state.t < r.state.t; });
      std::vector<AgentState> track;
      std::size_t inherited = 0;
      for (const Row & row : rows) {
        if (!track.empty() && track.back().t == row.state.t) {
          result.diagnostics.push_back(
            {Diagnostic::Severity::kError, row.line, scenario_id, track_id, "duplicate timestep"});
          continue;
        }
        AgentState s = row.state;
        if (s.speed < kStationarySpeed && !track.empty()) {
          s.heading = track.back().heading;
          ++inherited;
        }
        track.push_back(std::move(s));
      }
      if (inherited > 0) {
        result.diagnostics.push_back(
          {Diagnostic::Severity::kWarning, 0, scenario_id, track_id,
           std::to_string(inherited) + " near-zero-speed frame(s) inherited the previous heading"});
      }
      TrackFixups none{std::vector<bool>(track.size(), false), std::vector<bool>(track.size(), false)};
      finalize_track(scenario_id, track, none, result.diagnostics);
      for (const AgentState & s : track) {
        validate(s);
      }
      scenario.agents.emplace(track_id, std::move(track));
    }
    scenario.dt = nominal_dt(scenario);
    result.scenarios.push_back(std::move(scenario));
  }
  return result;
}

ParseResult adapt_external(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return adapt_external(in);
}

}  // namespace mei::io
