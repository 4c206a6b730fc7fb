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

#include "mei/classifier.hpp"

#include "mei/errors.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace mei::classify
{

namespace
{
constexpr std::array<std::pair<RiskLevel, std::string_view>, 4> kLevelNames{{
  {RiskLevel::kNonConflict, "NonConflict"},
  {RiskLevel::kPotentialConflict, "PotentialConflict"},
  {RiskLevel::kCriticalConflict, "CriticalConflict"},
  {RiskLevel::kCrash, "Crash"},
}};
}  // namespace

std::string_view to_string(RiskLevel level) noexcept
{
  return kLevelNames[static_cast<std::size_t>(level)].second;
}

std::optional<RiskLevel> parse_risk_level(std::string_view text) noexcept
{
  for (const auto & [level, name] : kLevelNames) {
    if (name == text) {
      return level;
    }
  }
  return std::nullopt;
}

RiskLevel classify_frame(const metrics::FrameMetrics & fm, const metrics::MetricsConfig & cfg)
{
  if (fm.overlap) {
    return RiskLevel::kCrash;
  }
  if (fm.tem && *fm.tem == 0.0 && fm.in_depth && *fm.in_depth >= cfg.d_safe) {
    return RiskLevel::kCrash;
  }
  if (!fm.q_active) {
    return RiskLevel::kNonConflict;
  }
  if (fm.tem && *fm.tem <= cfg.tem_star && fm.in_depth && *fm.in_depth >= 0.0) {
    return RiskLevel::kCriticalConflict;
  }
  return RiskLevel::kPotentialConflict;
}

ConflictEvent extract_event(
  PairKey key, std::span<const metrics::FrameMetrics> frames, std::optional<double> pet,
  const metrics::MetricsConfig & cfg)
{
  if (frames.empty()) {
    throw InputError("cannot extract an event from an empty frame stream");
  }
  std::vector<metrics::FrameMetrics> sorted(frames.begin(), frames.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto & l, const auto & r) { return l.t < r.t; });

  ConflictEvent event;
  event.key = std::move(key);
  event.pet = pet;
  event.frame_count = sorted.size();
  for (const auto & fm : sorted) {
    if (fm.mei && (!event.mei_max || *fm.mei > *event.mei_max)) {
      event.mei_max = fm.mei;
      event.t_mei_max = fm.t;
    }
    if (fm.act && (!event.act_min || *fm.act < *event.act_min)) {
      event.act_min = fm.act;
      event.t_act_min = fm.t;
    }
    event.peak_level = std::max(event.peak_level, classify_frame(fm, cfg));
  }
  return event;
}

FilterResult filter_collisions(std::vector<PairFrames> pairs)
{
  FilterResult result;
  for (auto & pf : pairs) {
    const auto hit = std::find_if(pf.frames.begin(), pf.frames.end(), [](const auto & fm) { return fm.overlap; });
    if (hit == pf.frames.end()) {
      result.kept.push_back(std::move(pf));
      continue;
    }
    Timestamp first = hit->t;
    for (auto it = hit; it != pf.frames.end(); ++it) {
      if (it->overlap && it->t < first) {
        first = it->t;
      }
    }
    result.removed.push_back({std::move(pf.key), first});
  }
  return result;
}

}  // namespace mei::classify
