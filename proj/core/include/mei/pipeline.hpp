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

#ifndef MEI__PIPELINE_HPP_
#define MEI__PIPELINE_HPP_

#include "mei/classifier.hpp"
#include "mei/metrics.hpp"
#include "mei/trajectory_io.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mei::pipeline
{

/// Optional restriction to one scenario and/or one agent pair.
struct Selector
{
  std::optional<std::string> scenario_id;
  std::optional<std::pair<std::string, std::string>> pair;
};

/// Ordered key with agent ids sorted lexicographically.
classify::PairKey make_key(std::string scenario_id, std::string a, std::string b);

/// Unordered agent pairs of a scenario matching the selector, sorted.
std::vector<classify::PairKey> enumerate_pairs(const io::Scenario & scenario, const Selector & selector);

/// Per-frame metrics on the timestamps both agents share, time-ordered.
std::vector<metrics::FrameMetrics> compute_pair_frames(
  const io::Scenario & scenario, const classify::PairKey & key, const metrics::MetricsConfig & cfg);

struct PairAnalysis
{
  classify::PairKey key;
  std::vector<metrics::FrameMetrics> frames;
  std::optional<double> pet;
  classify::ConflictEvent event;
};

/// Frames, PET and the aggregated event for one pair. Pairs without shared
/// frames produce an event with frame_count 0.
PairAnalysis analyze_pair(
  const io::Scenario & scenario, const classify::PairKey & key, const metrics::MetricsConfig & cfg,
  bool with_pet = true);

/// Analyses every selected pair of every scenario, spreading scenarios over
/// `jobs` worker threads. Results are sorted by key regardless of `jobs`.
std::vector<PairAnalysis> analyze_corpus(
  const std::vector<io::Scenario> & scenarios, const metrics::MetricsConfig & cfg, const Selector & selector,
  std::size_t jobs, bool with_pet = true);

}  // namespace mei::pipeline

#endif  // MEI__PIPELINE_HPP_
