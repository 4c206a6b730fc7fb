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

#ifndef MEI__TABLES_HPP_
#define MEI__TABLES_HPP_

#include "mei/classifier.hpp"
#include "mei/metrics.hpp"

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace mei::tables
{

// Undefined values are written as empty fields.

inline constexpr std::string_view kFramesHeader =
  "t,in_depth,tem,mei,act,q_active,overlap,risk_level,d_ct,d_a,d_b";

inline constexpr std::string_view kEventsHeader =
  "scenario_id,agent_a,agent_b,mei_max,t_mei_max,act_min,t_act_min,pet,peak_level,frame_count";

inline constexpr std::string_view kRemovalsHeader = "scenario_id,agent_a,agent_b,first_overlap_t";

void write_frames(
  std::ostream & out, std::span<const metrics::FrameMetrics> frames, const metrics::MetricsConfig & cfg);

void write_events(std::ostream & out, std::span<const classify::ConflictEvent> events);

/// Reads a table produced by write_events. Throws mei::SchemaError on a
/// header mismatch and mei::RowError on a malformed row.
std::vector<classify::ConflictEvent> read_events(std::istream & in);

void write_removals(std::ostream & out, std::span<const classify::CollisionRemoval> removed);

}  // namespace mei::tables

#endif  // MEI__TABLES_HPP_
