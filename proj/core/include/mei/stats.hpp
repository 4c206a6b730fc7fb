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

#ifndef MEI__STATS_HPP_
#define MEI__STATS_HPP_

#include "mei/classifier.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mei::stats
{

/// Linear-interpolation percentile of sorted values: rank r = p/100 * (n-1),
/// interpolated between the neighbors floor(r) and ceil(r). Throws
/// mei::InputError on empty input or p outside [0, 100].
double percentile(std::span<const double> sorted_values, double p);

enum class Metric { kMeiMax, kActMin, kPet };

std::string_view to_string(Metric m) noexcept;

/// True when larger values mean higher risk.
constexpr bool higher_is_riskier(Metric m) noexcept { return m == Metric::kMeiMax; }

struct ThresholdRow
{
  int top_share = 0;        ///< "Top k%" risk share
  int percentile_rank = 0;  ///< percentile used for the threshold
  double value = 0.0;
};

struct MetricThresholds
{
  Metric metric = Metric::kMeiMax;
  std::size_t sample_count = 0;  ///< events with this metric defined
  std::vector<ThresholdRow> rows;  ///< Top 1% first; empty without samples
};

struct ThresholdTable
{
  std::vector<MetricThresholds> metrics;  ///< MEI_max, ACT_min, PET
  std::size_t event_count = 0;
  bool low_sample = false;

  const MetricThresholds & at(Metric m) const;
};

/// Risk shares reported per metric, Top 1% .. Top 99%.
inline constexpr std::array<int, 9> kTopShares{1, 5, 10, 25, 50, 75, 90, 95, 99};
inline constexpr std::size_t kLowSampleThreshold = 100;

/// Undefined values are excluded per metric. MEI_max uses percentile
/// 100 - share for "Top share%", ACT_min and PET use the share itself.
ThresholdTable build_threshold_table(std::span<const classify::ConflictEvent> events);

/// Defined values of one metric across events.
std::vector<double> metric_values(std::span<const classify::ConflictEvent> events, Metric m);

struct Histogram
{
  std::vector<double> edges;  ///< size counts.size() + 1
  std::vector<std::size_t> counts;
  double bin_width = 0.0;
};

/// Left-closed, right-open bins starting at floor(min / width) * width.
/// Throws mei::InputError unless bin_width > 0.
Histogram histogram(std::span<const double> values, double bin_width);

/// Machine-readable (JSON) report of a threshold table plus histograms.
std::string threshold_report_json(
  const ThresholdTable & table, std::span<const std::pair<Metric, Histogram>> histograms);

/// Comma-separated Table-II-shaped rows:
/// risk_level,mei_max,mei_max_rank,act_min,act_min_rank,pet,pet_rank
std::string threshold_table_csv(const ThresholdTable & table);

}  // namespace mei::stats

#endif  // MEI__STATS_HPP_
