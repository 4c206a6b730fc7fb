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

#include "mei/trajectory_io.hpp"

#include "mei/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace mei::io
{

namespace
{

constexpr double kStationarySpeed = 0.1;  // m/s; below this a derived heading is unreliable
constexpr double kGapFactor = 1.5;

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

std::vector<std::string_view> split(std::string_view line, char sep = ',')
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view text)
{
  double value = 0.0;
  const auto * end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    return std::nullopt;
  }
  return value;
}

std::int64_t median_spacing(const std::vector<AgentState> & track)
{
  std::vector<std::int64_t> steps;
  for (std::size_t k = 1; k < track.size(); ++k) {
    steps.push_back(track[k].t.ticks() - track[k - 1].t.ticks());
  }
  if (steps.empty()) {
    return 0;
  }
  std::nth_element(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(steps.size() / 2), steps.end());
  return steps[steps.size() / 2];
}

enum Column : std::size_t { kScenario, kAgent, kType, kTime, kX, kY, kSpeed, kHeading, kLength, kWidth, kColumnCount };

constexpr std::array<std::string_view, kColumnCount> kColumnNames{
  "scenario_id", "agent_id", "agent_type", "t", "x", "y", "speed", "heading", "length", "width"};

struct PendingState
{
  AgentState state;
  bool speed_missing = false;
  bool heading_missing = false;
  std::size_t line = 0;
};

}  // namespace

double Scenario::duration() const
{
  std::optional<Timestamp> lo;
  std::optional<Timestamp> hi;
  for (const auto & [id, track] : agents) {
    if (track.empty()) {
      continue;
    }
    lo = lo ? std::min(*lo, track.front().t) : track.front().t;
    hi = hi ? std::max(*hi, track.back().t) : track.back().t;
  }
  return lo ? Timestamp::from_ticks(hi->ticks() - lo->ticks()).seconds() : 0.0;
}

std::string format(const Diagnostic & d)
{
  std::ostringstream os;
  os << (d.severity == Diagnostic::Severity::kError ? "error" : "warning");
  if (d.line > 0) {
    os << " line " << d.line;
  }
  if (!d.scenario_id.empty()) {
    os << " scenario " << d.scenario_id;
  }
  if (!d.agent_id.empty()) {
    os << " agent " << d.agent_id;
  }
  os << ": " << d.message;
  return os.str();
}

std::size_t ParseResult::error_count() const
{
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic & d) {
    return d.severity == Diagnostic::Severity::kError;
  }));
}

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
  text = trim(text);
  if (text.empty()) {
    return std::nullopt;
  }
  const std::size_t dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 4) {
    return std::nullopt;
  }
  const auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac) || whole.size() > 12) {
    return std::nullopt;
  }
  std::int64_t ticks = 0;
  for (char c : whole) {
    ticks = ticks * 10 + (c - '0');
  }
  std::int64_t frac_ticks = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    frac_ticks = frac_ticks * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  }
  return Timestamp::from_ticks(ticks * Timestamp::kTicksPerSecond + frac_ticks);
}

std::string format_timestamp(Timestamp t)
{
  const std::int64_t whole = t.ticks() / Timestamp::kTicksPerSecond;
  std::int64_t frac = t.ticks() % Timestamp::kTicksPerSecond;
  std::string out = std::to_string(whole);
  if (frac == 0) {
    return out + ".0";
  }
  std::string digits = std::to_string(frac);
  digits.insert(0, 4 - digits.size(), '0');
  while (digits.back() == '0') {
    digits.pop_back();
  }
  return out + "." + digits;
}

std::string format_double(double value)
{
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("failed to format double");
  }
  return std::string(buf.data(), ptr);
}

void finalize_track(
  const std::string & scenario_id, std::vector<AgentState> & track, const TrackFixups & fixups,
  std::vector<Diagnostic> & diagnostics)
{
  const auto warn = [&](std::string msg) {
    diagnostics.push_back(
      {Diagnostic::Severity::kWarning, 0, scenario_id, track.empty() ? "" : track.front().agent_id, std::move(msg)});
  };
  const std::size_t n = track.size();
  const bool any_missing =
    std::find(fixups.speed_missing.begin(), fixups.speed_missing.end(), true) != fixups.speed_missing.end() ||
    std::find(fixups.heading_missing.begin(), fixups.heading_missing.end(), true) != fixups.heading_missing.end();

  if (any_missing) {
    std::optional<double> last_heading;
    for (std::size_t k = 0; k < n; ++k) {
      double vx = 0.0;
      double vy = 0.0;
      if (n >= 2) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
        const double dt = Timestamp::from_ticks(track[hi].t.ticks() - track[lo].t.ticks()).seconds();
        vx = (track[hi].x - track[lo].x) / dt;
        vy = (track[hi].y - track[lo].y) / dt;
      }
      const double derived_speed = std::hypot(vx, vy);
      if (fixups.speed_missing[k]) {
        track[k].speed = derived_speed;
      }
      if (fixups.heading_missing[k]) {
        if (derived_speed >= kStationarySpeed) {
          track[k].heading = geometry::normalize_angle(std::atan2(vy, vx));
        } else {
          track[k].heading = last_heading.value_or(0.0);
          warn(
            "near-zero speed at t=" + format_timestamp(track[k].t) +
            "; heading inherited from the previous frame");
        }
      }
      last_heading = track[k].heading;
    }
  }

  const std::int64_t spacing = median_spacing(track);
  for (std::size_t k = 1; k < n && spacing > 0; ++k) {
    const std::int64_t step = track[k].t.ticks() - track[k - 1].t.ticks();
    if (static_cast<double>(step) > kGapFactor * static_cast<double>(spacing)) {
      warn("gap of " + format_timestamp(Timestamp::from_ticks(step)) + " s before t=" + format_timestamp(track[k].t));
    }
  }
}

std::optional<double> nominal_dt(const Scenario & scenario)
{
  std::vector<std::int64_t> spacings;
  for (const auto & [id, track] : scenario.agents) {
    if (const std::int64_t s = median_spacing(track); s > 0) {
      spacings.push_back(s);
    }
  }
  if (spacings.empty()) {
    return std::nullopt;
  }
  std::sort(spacings.begin(), spacings.end());
  return Timestamp::from_ticks(spacings[spacings.size() / 2]).seconds();
}

ParseResult parse_canonical(std::istream & in)
{
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, kColumnCount>> index;
  std::size_t header_width = 0;

  std::map<std::string, std::map<std::string, std::vector<PendingState>>> grouped;

  const auto row_error = [&](std::size_t ln, std::string msg) {
    result.diagnostics.push_back({Diagnostic::Severity::kError, ln, "", "", std::move(msg)});
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    const auto fields = split(view);
    if (!index) {
      std::array<std::size_t, kColumnCount> idx{};
      for (std::size_t c = 0; c < kColumnCount; ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumnNames[c]);
        if (it == fields.end()) {
          throw SchemaError(
            "missing required column '" + std::string(kColumnNames[c]) + "'", std::string(kColumnNames[c]));
        }
        idx[c] = static_cast<std::size_t>(it - fields.begin());
      }
      index = idx;
      header_width = fields.size();
      continue;
    }
    if (fields.size() != header_width) {
      row_error(
        line_no, "expected " + std::to_string(header_width) + " fields, got " + std::to_string(fields.size()));
      continue;
    }
    const auto field = [&](Column c) { return fields[(*index)[c]]; };

    PendingState pending;
    pending.line = line_no;
    AgentState & s = pending.state;
    const std::string scenario_id(field(kScenario));
    s.agent_id = std::string(field(kAgent));
    if (scenario_id.empty() || s.agent_id.empty()) {
      row_error(line_no, "empty scenario_id or agent_id");
      continue;
    }
    const auto type = parse_agent_type(field(kType));
    if (!type) {
      row_error(line_no, "unknown agent_type '" + std::string(field(kType)) + "'");
      continue;
    }
    s.type = *type;
    const auto t = parse_timestamp(field(kTime));
    if (!t) {
      row_error(line_no, "invalid timestamp '" + std::string(field(kTime)) + "'");
      continue;
    }
    s.t = *t;

    bool ok = true;
    const auto number = [&](Column c, double & out, bool allow_empty) -> bool {
      const std::string_view text = field(c);
      if (text.empty()) {
        if (!allow_empty) {
          row_error(line_no, "missing value in column '" + std::string(kColumnNames[c]) + "'");
          ok = false;
        }
        return false;
      }
      const auto v = parse_double(text);
      if (!v) {
        row_error(line_no, "malformed number in column '" + std::string(kColumnNames[c]) + "'");
        ok = false;
        return false;
      }
      if (!std::isfinite(*v)) {
        row_error(line_no, "non-finite value in column '" + std::string(kColumnNames[c]) + "'");
        ok = false;
        return false;
      }
      out = *v;
      return true;
    };

    number(kX, s.x, false);
    number(kY, s.y, false);
    pending.speed_missing = ok && !number(kSpeed, s.speed, true);
    pending.heading_missing = ok && !number(kHeading, s.heading, true);
    const bool pedestrian = s.type == AgentType::kPedestrian;
    if (ok && !number(kLength, s.length, pedestrian)) {
      s.length = kDefaultPedestrianLength;
    }
    if (ok && !number(kWidth, s.width, pedestrian)) {
      s.width = kDefaultPedestrianWidth;
    }
    if (!ok) {
      continue;
    }
    s.heading = geometry::normalize_angle(s.heading);
    if (s.speed < 0.0) {
      row_error(line_no, "speed must be >= 0");
      continue;
    }
    if (!(s.length > 0.0) || !(s.width > 0.0)) {
      row_error(line_no, "length and width must be > 0");
      continue;
    }
    grouped[scenario_id][s.agent_id].push_back(std::move(pending));
  }

  if (!index) {
    throw SchemaError("missing header line", std::string(kColumnNames[kScenario]));
  }

  for (auto & [scenario_id, agents] : grouped) {
    Scenario scenario;
    scenario.scenario_id = scenario_id;
    for (auto & [agent_id, rows] : agents) {
      std::stable_sort(rows.begin(), rows.end(), [](const auto & l, const auto & r) { return l.state.t < r.state.t; });
      std::vector<AgentState> track;
      TrackFixups fixups;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!track.empty() && track.back().t == rows[k].state.t) {
          result.diagnostics.push_back(
            {Diagnostic::Severity::kError, rows[k].line, scenario_id, agent_id,
             "duplicate timestamp " + format_timestamp(rows[k].state.t)});
          continue;
        }
        if (!track.empty() && rows[k].state.type != track.front().type) {
          result.diagnostics.push_back(
            {Diagnostic::Severity::kWarning, rows[k].line, scenario_id, agent_id,
             "agent_type changes within track; keeping the first"});
          rows[k].state.type = track.front().type;
        }
        track.push_back(rows[k].state);
        fixups.speed_missing.push_back(rows[k].speed_missing);
        fixups.heading_missing.push_back(rows[k].heading_missing);
      }
      finalize_track(scenario_id, track, fixups, result.diagnostics);
      scenario.agents.emplace(agent_id, std::move(track));
    }
    scenario.dt = nominal_dt(scenario);
    result.scenarios.push_back(std::move(scenario));
  }
  return result;
}

ParseResult parse_canonical(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return parse_canonical(in);
}

void write_canonical(std::ostream & out, const std::vector<Scenario> & scenarios)
{
  out << kCanonicalHeader << '\n';
  for (const Scenario & sc : scenarios) {
    for (const auto & [agent_id, track] : sc.agents) {
      for (const AgentState & s : track) {
        out << sc.scenario_id << ',' << s.agent_id << ',' << to_string(s.type) << ',' << format_timestamp(s.t) << ','
            << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.speed) << ','
            << format_double(s.heading) << ',' << format_double(s.length) << ',' << format_double(s.width) << '\n';
      }
    }
  }
}

Scenario resample(const Scenario & scenario, double dt)
{
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw InputError("resample dt must be > 0");
  }
  const double raw_ticks = dt * static_cast<double>(Timestamp::kTicksPerSecond);
  const auto step = static_cast<std::int64_t>(std::llround(raw_ticks));
  if (step <= 0 || std::abs(raw_ticks - static_cast<double>(step)) > 1e-6) {
    throw InputError("resample dt must be a multiple of 0.1 ms");
  }

  Scenario out;
  out.scenario_id = scenario.scenario_id;
  for (const auto & [agent_id, track] : scenario.agents) {
    if (track.size() < 2) {
      throw InputError("agent '" + agent_id + "' has fewer than two states; cannot resample");
    }
    const std::int64_t first = track.front().t.ticks();
    const std::int64_t last = track.back().t.ticks();
    // Smallest multiple of step >= first (ticks are non-negative).
    std::int64_t tick = ((first + step - 1) / step) * step;

    std::vector<AgentState> resampled;
    std::size_t seg = 0;
    for (; tick <= last; tick += step) {
      while (seg + 1 < track.size() && track[seg + 1].t.ticks() <= tick) {
        ++seg;
      }
      const AgentState & s0 = track[seg];
      if (s0.t.ticks() == tick) {
        resampled.push_back(s0);
        continue;
      }
      const AgentState & s1 = track[seg + 1];
      const double frac =
        static_cast<double>(tick - s0.t.ticks()) / static_cast<double>(s1.t.ticks() - s0.t.ticks());
      AgentState s = s0;
      s.t = Timestamp::from_ticks(tick);
      s.x = s0.x + frac * (s1.x - s0.x);
      s.y = s0.y + frac * (s1.y - s0.y);
      s.speed = s0.speed + frac * (s1.speed - s0.speed);
      s.heading = geometry::normalize_angle(s0.heading + frac * geometry::normalize_angle(s1.heading - s0.heading));
      resampled.push_back(std::move(s));
    }
    if (!resampled.empty()) {
      out.agents.emplace(agent_id, std::move(resampled));
    }
  }
  out.dt = Timestamp::from_ticks(step).seconds();
  return out;
}

}  // namespace mei::io
