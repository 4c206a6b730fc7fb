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

#include "mei/tables.hpp"

#include "mei/errors.hpp"
#include "mei/trajectory_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

namespace mei::tables
{

namespace
{

std::string opt(const std::optional<double> & v) { return v ? io::format_double(*v) : std::string(); }

std::string opt(const std::optional<Timestamp> & t) { return t ? io::format_timestamp(*t) : std::string(); }

std::vector<std::string> split(const std::string & line)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
    out.push_back(line.substr(start, pos - start));
  }
  std::string last = line.substr(start);
  if (!last.empty() && last.back() == '\r') {
    last.pop_back();
  }
  out.push_back(std::move(last));
  return out;
}

std::optional<double> read_optional(const std::string & text, std::size_t line)
{
  if (text.empty()) {
    return std::nullopt;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw RowError("malformed number '" + text + "'", line);
  }
  return v;
}

std::optional<Timestamp> read_time(const std::string & text, std::size_t line)
{
  if (text.empty()) {
    return std::nullopt;
  }
  auto t = io::parse_timestamp(text);
  if (!t) {
    throw RowError("malformed timestamp '" + text + "'", line);
  }
  return t;
}

}  // namespace

void write_frames(
  std::ostream & out, std::span<const metrics::FrameMetrics> frames, const metrics::MetricsConfig & cfg)
{
  out << kFramesHeader << '\n';
  for (const auto & fm : frames) {
    out << io::format_timestamp(fm.t) << ',' << opt(fm.in_depth) << ',' << opt(fm.tem) << ',' << opt(fm.mei) << ','
        << opt(fm.act) << ',' << (fm.q_active ? 1 : 0) << ',' << (fm.overlap ? 1 : 0) << ','
        << classify::to_string(classify::classify_frame(fm, cfg)) << ',' << opt(fm.d_ct) << ',' << opt(fm.d_a)
        << ',' << opt(fm.d_b) << '\n';
  }
}

void write_events(std::ostream & out, std::span<const classify::ConflictEvent> events)
{
  out << kEventsHeader << '\n';
  for (const auto & e : events) {
    out << e.key.scenario_id << ',' << e.key.agent_a << ',' << e.key.agent_b << ',' << opt(e.mei_max) << ','
        << opt(e.t_mei_max) << ',' << opt(e.act_min) << ',' << opt(e.t_act_min) << ',' << opt(e.pet) << ','
        << classify::to_string(e.peak_level) << ',' << e.frame_count << '\n';
  }
}

std::vector<classify::ConflictEvent> read_events(std::istream & in)
{
  std::vector<classify::ConflictEvent> events;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!header_seen) {
      if (line != kEventsHeader) {
        throw SchemaError("event table header mismatch; expected '" + std::string(kEventsHeader) + "'", "header");
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 10) {
      throw RowError("expected 10 fields, got " + std::to_string(f.size()), line_no);
    }
    classify::ConflictEvent e;
    e.key = {f[0], f[1], f[2]};
    e.mei_max = read_optional(f[3], line_no);
    e.t_mei_max = read_time(f[4], line_no);
    e.act_min = read_optional(f[5], line_no);
    e.t_act_min = read_time(f[6], line_no);
    e.pet = read_optional(f[7], line_no);
    const auto level = classify::parse_risk_level(f[8]);
    if (!level) {
      throw RowError("unknown risk level '" + f[8] + "'", line_no);
    }
    e.peak_level = *level;
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(f[9].data(), f[9].data() + f[9].size(), count);
    if (ec != std::errc{} || ptr != f[9].data() + f[9].size()) {
      throw RowError("malformed frame_count", line_no);
    }
    e.frame_count = count;
    events.push_back(std::move(e));
  }
  if (!header_seen) {
    throw SchemaError("event table is missing its header", "header");
  }
  return events;
}

void write_removals(std::ostream & out, std::span<const classify::CollisionRemoval> removed)
{
  out << kRemovalsHeader << '\n';
  for (const auto & r : removed) {
    out << r.key.scenario_id << ',' << r.key.agent_a << ',' << r.key.agent_b << ','
        << io::format_timestamp(r.first_overlap) << '\n';
  }
}

}  // namespace mei::tables
