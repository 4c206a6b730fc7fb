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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

namespace mei::classify
{
namespace
{

using metrics::FrameMetrics;
using metrics::MetricsConfig;

FrameMetrics frame(double t, std::optional<double> mei, std::optional<double> act = {})
{
  FrameMetrics fm;
  fm.t = Timestamp::from_seconds(t);
  fm.mei = mei;
  fm.act = act;
  return fm;
}

FrameMetrics gated(bool q, std::optional<double> tem, std::optional<double> in_depth, bool overlap = false)
{
  FrameMetrics fm;
  fm.q_active = q;
  fm.tem = tem;
  fm.in_depth = in_depth;
  fm.overlap = overlap;
  return fm;
}

TEST(RiskLevel, NamesRoundTrip)
{
  for (int i = 0; i <= 3; ++i) {
    const auto level = static_cast<RiskLevel>(i);
    EXPECT_EQ(parse_risk_level(to_string(level)), level);
  }
  EXPECT_FALSE(parse_risk_level("Severe").has_value());
  EXPECT_LT(RiskLevel::kPotentialConflict, RiskLevel::kCriticalConflict);
}

TEST(ClassifyFrame, Examples)
{
  const MetricsConfig cfg;
  EXPECT_EQ(classify_frame(gated(false, 2.0, 1.0), cfg), RiskLevel::kNonConflict);
  EXPECT_EQ(classify_frame(gated(true, 2.0, 1.0), cfg), RiskLevel::kCriticalConflict);
  EXPECT_EQ(classify_frame(gated(false, 0.0, 1.0, true), cfg), RiskLevel::kCrash);
  EXPECT_EQ(classify_frame(gated(true, 4.0, 1.0), cfg), RiskLevel::kPotentialConflict);
  EXPECT_EQ(classify_frame(gated(true, 2.0, -0.5), cfg), RiskLevel::kPotentialConflict);
  EXPECT_EQ(classify_frame(gated(true, std::nullopt, std::nullopt), cfg), RiskLevel::kPotentialConflict);
  EXPECT_EQ(classify_frame(gated(true, 3.0, 0.0), cfg), RiskLevel::kCriticalConflict);
}

TEST(ClassifyFrame, ZeroTemWithinMarginIsCrash)
{
  const MetricsConfig cfg{.d_safe = 0.5};
  EXPECT_EQ(classify_frame(gated(true, 0.0, 0.7), cfg), RiskLevel::kCrash);
  EXPECT_EQ(classify_frame(gated(true, 0.0, 0.2), cfg), RiskLevel::kCriticalConflict);
}

TEST(ClassifyFrame, MonotoneInTem)
{
  const MetricsConfig cfg;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tem(0.0, 10.0);
  std::uniform_real_distribution<double> depth(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double d = depth(rng);
    double hi = tem(rng);
    double lo = tem(rng);
    if (lo > hi) {
      std::swap(lo, hi);
    }
    EXPECT_GE(classify_frame(gated(true, lo, d), cfg), classify_frame(gated(true, hi, d), cfg));
  }
}

TEST(ExtractEvent, ArgmaxAndArgmin)
{
  const std::vector<FrameMetrics> frames{frame(0, 0.1, 3.0), frame(1, 0.5, 1.0), frame(2, 0.3, 2.0)};
  const auto e = extract_event({"s", "A", "B"}, frames, 2.5, MetricsConfig{});
  EXPECT_EQ(*e.mei_max, 0.5);
  EXPECT_EQ(*e.t_mei_max, Timestamp::from_seconds(1));
  EXPECT_EQ(*e.act_min, 1.0);
  EXPECT_EQ(*e.t_act_min, Timestamp::from_seconds(1));
  EXPECT_EQ(*e.pet, 2.5);
  EXPECT_EQ(e.frame_count, 3u);
  EXPECT_TRUE(has_positive_mei(e));
}

TEST(ExtractEvent, UndefinedValuesAreSkipped)
{
  const std::vector<FrameMetrics> frames{frame(0, std::nullopt), frame(0.1, std::nullopt)};
  const auto e = extract_event({"s", "A", "B"}, frames, std::nullopt, MetricsConfig{});
  EXPECT_FALSE(e.mei_max.has_value());
  EXPECT_FALSE(e.t_mei_max.has_value());
  EXPECT_FALSE(e.act_min.has_value());
  EXPECT_FALSE(has_positive_mei(e));
}

TEST(ExtractEvent, TiesGoToEarliestFrame)
{
  const std::vector<FrameMetrics> frames{frame(0.2, 0.5, 1.0), frame(0.1, 0.5, 1.0), frame(0.3, 0.1, 4.0)};
  const auto e = extract_event({"s", "A", "B"}, frames, std::nullopt, MetricsConfig{});
  EXPECT_EQ(*e.t_mei_max, Timestamp::from_seconds(0.1));
  EXPECT_EQ(*e.t_act_min, Timestamp::from_seconds(0.1));
}

TEST(ExtractEvent, EmptyStreamThrows)
{
  EXPECT_THROW(extract_event({"s", "A", "B"}, {}, std::nullopt, MetricsConfig{}), InputError);
}

TEST(ExtractEvent, PermutationInvariantAndPeakLevelConsistent)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MetricsConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<FrameMetrics> frames;
    for (int k = 0; k < 20; ++k) {
      FrameMetrics fm = frame(k * 0.1, u(rng) < 0.3 ? std::nullopt : std::optional(u(rng) * 3));
      fm.act = u(rng) < 0.3 ? std::nullopt : std::optional(u(rng) * 5);
      fm.q_active = u(rng) < 0.7;
      fm.tem = u(rng) * 6;
      fm.in_depth = u(rng) * 4 - 1;
      fm.overlap = u(rng) < 0.02;
      frames.push_back(fm);
    }
    const auto e = extract_event({"s", "A", "B"}, frames, std::nullopt, cfg);
    auto shuffled = frames;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto f = extract_event({"s", "A", "B"}, shuffled, std::nullopt, cfg);
    ASSERT_EQ(e.mei_max, f.mei_max);
    ASSERT_EQ(e.t_mei_max, f.t_mei_max);
    ASSERT_EQ(e.act_min, f.act_min);
    ASSERT_EQ(e.t_act_min, f.t_act_min);
    ASSERT_EQ(e.peak_level, f.peak_level);

    const bool any_crash = std::any_of(frames.begin(), frames.end(), [&](const FrameMetrics & fm) {
      return classify_frame(fm, cfg) == RiskLevel::kCrash;
    });
    const bool any_critical = std::any_of(frames.begin(), frames.end(), [&](const FrameMetrics & fm) {
      return fm.q_active && fm.tem && *fm.tem <= cfg.tem_star && fm.in_depth && *fm.in_depth >= 0.0;
    });
    ASSERT_EQ(e.peak_level == RiskLevel::kCriticalConflict, any_critical && !any_crash);
  }
}

TEST(FilterCollisions, Examples)
{
  auto clean = [](const char * b) {
    PairFrames pf{{"s", "A", b}, {}};
    for (int k = 0; k < 5; ++k) {
      pf.frames.push_back(frame(k * 0.1, 0.2));
    }
    return pf;
  };
  auto touched = clean("C");
  touched.frames[3].overlap = true;
  touched.frames[4].overlap = true;

  const auto result = filter_collisions({clean("B"), touched, clean("D")});
  ASSERT_EQ(result.removed.size(), 1u);
  EXPECT_EQ(result.removed[0].key.agent_b, "C");
  EXPECT_EQ(result.removed[0].first_overlap, Timestamp::from_seconds(0.3));
  ASSERT_EQ(result.kept.size(), 2u);
  EXPECT_EQ(result.kept[0].key.agent_b, "B");
  EXPECT_EQ(result.kept[1].key.agent_b, "D");

  const auto untouched = filter_collisions({clean("B"), clean("D")});
  EXPECT_EQ(untouched.kept.size(), 2u);
  EXPECT_TRUE(untouched.removed.empty());
}

}  // namespace
}  // namespace mei::classify
