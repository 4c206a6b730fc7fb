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

#include "mei/stats.hpp"

#include "mei/errors.hpp"
#include "mei/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mei::stats
{

double percentile(std::span<const double> sorted_values, double p)
{
  if (sorted_values.empty()) {
    throw InputError("percentile of an empty sample");
  }
  if (!(p >= 0.0 && p <= 100.0)) {
    throw InputError("percentile rank must lie in [0, 100]");
  }
  const double rank = p / 100.0 * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

std::string_view to_string(Metric m) noexcept
{
  switch (m) {
    case Metric::kMeiMax:
      return "mei_max";
    case Metric::kActMin:
      return "act_min";
    case Metric::kPet:
      return "pet";
  }
  return "mei_max";
}

const MetricThresholds & ThresholdTable::at(Metric m) const
{
  for (const auto & mt : metrics) {
    if (mt.metric == m) {
      return mt;
    }
  }
  throw NotFoundError("metric not in threshold table");
}

std::vector<double> metric_values(std::span<const classify::ConflictEvent> events, Metric m)
{
  std::vector<double> values;
  for (const auto & e : events) {
    const std::optional<double> & v = m == Metric::kMeiMax ? e.mei_max : m == Metric::kActMin ? e.act_min : e.pet;
    if (v) {
      values.push_back(*v);
    }
  }
  return values;
}

ThresholdTable build_threshold_table(std::span<const classify::ConflictEvent> events)
{
  ThresholdTable table;
  table.event_count = events.size();
  table.low_sample = events.size() < kLowSampleThreshold;
  for (Metric m : {Metric::kMeiMax, Metric::kActMin, Metric::kPet}) {
    MetricThresholds mt;
    mt.metric = m;
    std::vector<double> values = metric_values(events, m);
    std::sort(values.begin(), values.end());
    mt.sample_count = values.size();
    if (!values.empty()) {
      for (int share : kTopShares) {
        const int rank = higher_is_riskier(m) ? 100 - share : share;
        mt.rows.push_back({share, rank, percentile(values, rank)});
      }
    }
    table.metrics.push_back(std::move(mt));
  }
  return table;
}

Histogram histogram(std::span<const double> values, double bin_width)
{
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw InputError("histogram bin width must be > 0");
  }
  Histogram h;
  h.bin_width = bin_width;
  if (values.empty()) {
    return h;
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const auto first = static_cast<long long>(std::floor(*min_it / bin_width));
  const auto last = static_cast<long long>(std::floor(*max_it / bin_width));
  h.counts.assign(static_cast<std::size_t>(last - first + 1), 0);
  for (double v : values) {
    const auto bin = static_cast<long long>(std::floor(v / bin_width)) - first;
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  for (long long k = first; k <= last + 1; ++k) {
    h.edges.push_back(static_cast<double>(k) * bin_width);
  }
  return h;
}

std::string threshold_report_json(
  const ThresholdTable & table, std::span<const std::pair<Metric, Histogram>> histograms)
{
  nlohmann::ordered_json doc;
  doc["event_count"] = table.event_count;
  doc["low_sample"] = table.low_sample;
  doc["percentile_method"] = "linear";
  for (const auto & mt : table.metrics) {
    nlohmann::ordered_json entry;
    entry["sample_count"] = mt.sample_count;
    entry["rows"] = nlohmann::ordered_json::array();
    for (const auto & row : mt.rows) {
      entry["rows"].push_back({{"top_share", row.top_share}, {"percentile", row.percentile_rank}, {"value", row.value}});
    }
    doc["thresholds"][std::string(to_string(mt.metric))] = std::move(entry);
  }
  for (const auto & [metric, h] : histograms) {
    doc["histograms"][std::string(to_string(metric))] = {
      {"bin_width", h.bin_width}, {"edges", h.edges}, {"counts", h.counts}};
  }
  return doc.dump(2) + "\n";
}

std::string threshold_table_csv(const ThresholdTable & table)
{
  std::ostringstream os;
  os << "risk_level,mei_max,mei_max_rank,act_min,act_min_rank,pet,pet_rank\n";
  for (std::size_t k = 0; k < kTopShares.size(); ++k) {
    os << "top_" << kTopShares[k] << "pct";
    for (Metric m : {Metric::kMeiMax, Metric::kActMin, Metric::kPet}) {
      const auto & mt = table.at(m);
      if (k < mt.rows.size()) {
        os << ',' << io::format_double(mt.rows[k].value) << ',' << mt.rows[k].percentile_rank;
      } else {
        os << ",,";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mei::stats
