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

#ifndef MEI__DATASET_ADAPTER_HPP_
#define MEI__DATASET_ADAPTER_HPP_

#include "mei/trajectory_io.hpp"

#include <iosfwd>
#include <string_view>

namespace mei::io
{

/// Layout tag accepted in a leading `# layout: <tag>` comment.
inline constexpr std::string_view kLateralConflictLayout = "av2-lateral-conflict/1";

/// Track id that marks the autonomous vehicle.
inline constexpr std::string_view kAvTrackId = "AV";

/// Footprint used when the export carries no dimensions for an object type.
struct DefaultFootprint
{
  double length;
  double width;
};

DefaultFootprint default_footprint(std::string_view object_type) noexcept;
AgentType map_object_type(std::string_view object_type) noexcept;

/// Maps a lateral-conflict dataset export (Argoverse-2 track columns, one
/// row per track and timestep at 10 Hz) onto canonical scenarios.
///
/// Scenarios without an AV track are skipped with a warning. Frames slower
/// than 0.1 m/s inherit the previous heading. Throws
/// mei::UnsupportedFormatError on an unknown layout tag or a header that
/// lacks the required columns.
ParseResult adapt_external(std::istream & in);
ParseResult adapt_external(std::string_view text);

}  // namespace mei::io

#endif  // MEI__DATASET_ADAPTER_HPP_
