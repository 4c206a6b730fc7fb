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

#include "mei/pipeline.hpp"

#include "mei/errors.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>


namespace mei::pipeline
{
namespace
{

using mei::testing::agent;

std::vector<io::Scenario> corpus()
{
  std::vector<io::Scenario> out;
  testing::RandomPairGenerator gen(90, 60.0, 15.0);
  for (int i = 0; i < 12; ++i) {
    auto [a, b] = gen();
    out.push_back(testing::straight_scenario("scn" + std::to_string(100 + i), a, b, 40));
  }
  const auto [a, b] = testing::head_on();
  out.push_back(testing::straight_scenario("head_on", a, b, 40));
  return out;
}

TEST(Pipeline, MakeKeySortsAgents)
{
  const auto k = make_key("s", "Z", "B");
  EXPECT_EQ(k.agent_a, "B");
  EXPECT_EQ(k.agent_b, "Z");
}

TEST(Pipeline, EnumeratePairsHonoursSelector)
{
  io::Scenario sc;
  sc.scenario_id = "s";
  for (const char * id : {"A", "B", "C"}) {
    sc.agents[id] = {agent(id, 0, 0, 0, 1)};
  }
  EXPECT_EQ(enumerate_pairs(sc, {}).size(), 3u);
  EXPECT_EQ(enumerate_pairs(sc, {.pair = std::pair<std::string, std::string>{"C", "A"}}).size(), 1u);
  EXPECT_TRUE(enumerate_pairs(sc, {.scenario_id = "other"}).empty());
  EXPECT_TRUE(enumerate_pairs(sc, {.pair = std::pair<std::string, std::string>{"A", "Q"}}).empty());
}

TEST(Pipeline, HeadOnFrames)
{
  const auto [a, b] = testing::head_on();
  const auto sc = testing::straight_scenario("h", a, b, 30);
  const auto frames = compute_pair_frames(sc, make_key("h", "A", "B"), metrics::MetricsConfig{});
  ASSERT_EQ(frames.size(), 30u);
  EXPECT_NEAR(*frames[0].in_depth, 2.0, 1e-12);
  EXPECT_NEAR(*frames[0].tem, 2.3, 1e-12);
  EXPECT_NEAR(*frames[10].tem, 1.3, 1e-9);
  EXPECT_TRUE(frames[25].overlap);
  EXPECT_FALSE(frames[29].overlap);
}

TEST(Pipeline, NearMissIsNotFilteredAndContactIs)
{
  // A passes a parked B; lateral gap 5 cm in one case, exactly zero in the other.
  const auto a = agent("A", 0, 0, 0, 10);
  const auto near = testing::straight_scenario("near", a, agent("B", 30, 2.05, 0, 0), 60);
  const auto touch = testing::straight_scenario("touch", a, agent("B", 30, 2.0, 0, 0), 60);
  const auto run = [](const io::Scenario & sc) {
    auto pa = analyze_pair(sc, make_key(sc.scenario_id, "A", "B"), metrics::MetricsConfig{});
    return classify::filter_collisions({classify::PairFrames{pa.key, pa.frames}});
  };
  EXPECT_TRUE(run(near).removed.empty());
  EXPECT_EQ(run(touch).removed.size(), 1u);
}

TEST(Pipeline, ParallelMatchesSerial)
{
  const auto data = corpus();
  const metrics::MetricsConfig cfg;
  const auto serial = analyze_corpus(data, cfg, {}, 1);
  const auto parallel = analyze_corpus(data, cfg, {}, 4);
  ASSERT_EQ(serial.size(), data.size());
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].key, parallel[i].key);
    EXPECT_EQ(serial[i].event.mei_max, parallel[i].event.mei_max);
    EXPECT_EQ(serial[i].pet, parallel[i].pet);
    if (i > 0) {
      EXPECT_LT(serial[i - 1].key, serial[i].key);
    }
  }
}

}  // namespace
}  // namespace mei::pipeline
