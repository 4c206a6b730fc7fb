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

#include "mei/dataset_adapter.hpp"
#include "mei/errors.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace mei::io
{
namespace
{

using std::numbers::pi;

std::string header() { return std::string(kCanonicalHeader) + "\n"; }

TEST(Timestamp, ParseAndFormat)
{
  EXPECT_EQ(parse_timestamp("0.1")->ticks(), 1000);
  EXPECT_EQ(parse_timestamp("5")->ticks(), 50000);
  EXPECT_EQ(parse_timestamp("10.25")->ticks(), 102500);
  EXPECT_EQ(parse_timestamp("0.0001")->ticks(), 1);
  EXPECT_FALSE(parse_timestamp("0.00001").has_value());
  EXPECT_FALSE(parse_timestamp("-1").has_value());
  EXPECT_FALSE(parse_timestamp("1e3").has_value());
  EXPECT_FALSE(parse_timestamp("").has_value());
  EXPECT_EQ(format_timestamp(Timestamp::from_ticks(1000)), "0.1");
  EXPECT_EQ(format_timestamp(Timestamp::from_ticks(50000)), "5.0");
  EXPECT_EQ(format_timestamp(Timestamp::from_ticks(102500)), "10.25");
}

TEST(FormatDouble, ShortestRoundTrip)
{
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

TEST(ParseCanonical, MinimalFile)
{
  const auto r = parse_canonical(header() + "s1,A,vehicle,0.0,0,0,1,0,4,2\ns1,A,vehicle,0.1,0.1,0,1,0,4,2\n");
  EXPECT_EQ(r.error_count(), 0u);
  ASSERT_EQ(r.scenarios.size(), 1u);
  ASSERT_EQ(r.scenarios[0].agents.size(), 1u);
  EXPECT_EQ(r.scenarios[0].agents.at("A").size(), 2u);
  EXPECT_NEAR(*r.scenarios[0].dt, 0.1, 1e-12);
}

TEST(ParseCanonical, NormalizesHeading)
{
  const auto r = parse_canonical(header() + "s,A,vehicle,0,0,0,1,7.0,4,2\n");
  EXPECT_NEAR(r.scenarios.at(0).agents.at("A")[0].heading, 7.0 - 2 * pi, 1e-12);
}

TEST(ParseCanonical, NegativeSpeedIsRowError)
{
  const auto r = parse_canonical(header() + "s,A,vehicle,0,0,0,-1,0,4,2\ns,A,vehicle,0.1,0,0,1,0,4,2\n");
  ASSERT_EQ(r.error_count(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 2u);
  EXPECT_EQ(r.scenarios.at(0).agents.at("A").size(), 1u);
}

TEST(ParseCanonical, NonFiniteIsRowError)
{
  const auto r = parse_canonical(header() + "s,A,vehicle,0,nan,0,1,0,4,2\n");
  EXPECT_EQ(r.error_count(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 2u);
}

TEST(ParseCanonical, MissingColumnNamesIt)
{
  try {
    parse_canonical("scenario_id,agent_id,agent_type,t,x,y,speed,heading,length\ns,A,vehicle,0,0,0,1,0,4\n");
    FAIL() << "expected a schema error";
  } catch (const SchemaError & e) {
    EXPECT_EQ(e.column(), "width");
  }
}

TEST(ParseCanonical, ColumnOrderCommentsAndPedestrianDefaults)
{
  const auto r = parse_canonical(
    "# exported by hand\n"
    "t,agent_id,scenario_id,x,y,speed,heading,length,width,agent_type,extra\n"
    "0,P,s,1,2,1.2,0.5,,,pedestrian,ignored\n");
  ASSERT_EQ(r.error_count(), 0u);
  const auto & p = r.scenarios.at(0).agents.at("P")[0];
  EXPECT_EQ(p.type, AgentType::kPedestrian);
  EXPECT_EQ(p.length, kDefaultPedestrianLength);
  EXPECT_EQ(p.width, kDefaultPedestrianWidth);

  const auto v = parse_canonical(header() + "s,A,vehicle,0,0,0,1,0,,\n");
  EXPECT_EQ(v.error_count(), 1u);
}

TEST(ParseCanonical, DerivesMissingKinematics)
{
  const auto r = parse_canonical(
    header() + "s,A,vehicle,0,0,0,,,4,2\ns,A,vehicle,0.1,0,1,,,4,2\ns,A,vehicle,0.2,0,2,,,4,2\n");
  ASSERT_EQ(r.error_count(), 0u);
  for (const auto & s : r.scenarios.at(0).agents.at("A")) {
    EXPECT_NEAR(s.speed, 10.0, 1e-9);
    EXPECT_NEAR(s.heading, pi / 2, 1e-9);
  }
}

TEST(ParseCanonical, DuplicateTimestampIsError)
{
  const auto r = parse_canonical(header() + "s,A,vehicle,0,0,0,1,0,4,2\ns,A,vehicle,0,1,0,1,0,4,2\n");
  EXPECT_EQ(r.error_count(), 1u);
}

TEST(ParseCanonical, RoundTripIsExact)
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  std::uniform_real_distribution<double> pos(0.01, 30);
  std::uniform_real_distribution<double> ang(-pi, pi);
  std::vector<Scenario> scenarios;
  for (int s = 0; s < 4; ++s) {
    Scenario sc;
    sc.scenario_id = "scn" + std::to_string(s);
    for (int a = 0; a < 3; ++a) {
      std::vector<AgentState> track;
      for (int k = 0; k < 12; ++k) {
        auto st = testing::agent(
          "ag" + std::to_string(a), u(rng), u(rng), ang(rng), pos(rng), pos(rng), pos(rng),
          static_cast<AgentType>(a), k * 0.1);
        track.push_back(st);
      }
      sc.agents.emplace(track.front().agent_id, std::move(track));
    }
    sc.dt = nominal_dt(sc);
    scenarios.push_back(std::move(sc));
  }
  std::ostringstream out;
  write_canonical(out, scenarios);
  const auto r = parse_canonical(out.str());
  EXPECT_EQ(r.error_count(), 0u);
  EXPECT_EQ(r.scenarios, scenarios);

  std::ostringstream again;
  write_canonical(again, r.scenarios);
  EXPECT_EQ(again.str(), out.str());
}

Scenario two_point(double h0, double h1)
{
  Scenario sc;
  sc.scenario_id = "s";
  sc.agents["A"] = {
    testing::agent("A", 0, 0, h0, 10, 4, 2, AgentType::kVehicle, 0.0),
    testing::agent("A", 10, 0, h1, 10, 4, 2, AgentType::kVehicle, 1.0)};
  sc.dt = 1.0;
  return sc;
}

TEST(Resample, LinearMidpoint)
{
  const auto out = resample(two_point(0, 0), 0.5);
  const auto & tr = out.agents.at("A");
  ASSERT_EQ(tr.size(), 3u);
  EXPECT_EQ(tr[1].t, Timestamp::from_seconds(0.5));
  EXPECT_DOUBLE_EQ(tr[1].x, 5.0);
}

TEST(Resample, HeadingTakesShorterArc)
{
  const auto out = resample(two_point(3.0, -3.0), 0.5);
  const double mid = out.agents.at("A")[1].heading;
  EXPECT_LT(std::abs(std::remainder(mid - pi, 2 * pi)), 1e-9);
}

TEST(Resample, NativeSpacingIsIdentityAndIdempotent)
{
  const auto [a0, b0] = testing::perpendicular();
  const Scenario sc = testing::straight_scenario("s", a0, b0, 30);
  EXPECT_EQ(resample(sc, 0.1), sc);
  const auto once = resample(sc, 0.3);
  EXPECT_EQ(resample(once, 0.3), once);
  const auto fine = resample(sc, 0.05);
  EXPECT_EQ(resample(fine, 0.05), fine);
}

TEST(Resample, Errors)
{
  Scenario single;
  single.scenario_id = "s";
  single.agents["A"] = {testing::agent("A", 0, 0, 0, 1)};
  EXPECT_THROW(resample(single, 0.1), InputError);
  EXPECT_THROW(resample(two_point(0, 0), 0.0), InputError);
  EXPECT_THROW(resample(two_point(0, 0), 0.00005), InputError);
}

std::string dataset_rows(int frames, bool with_av, const std::string & layout = "av2-lateral-conflict/1")
{
  std::ostringstream os;
  os << "# layout: " << layout << "\n";
  os << "scenario_id,track_id,object_type,timestep,position_x,position_y,heading,velocity_x,velocity_y\n";
  for (int k = 0; k < frames; ++k) {
    if (with_av) {
      os << "sc1,AV,vehicle," << k << "," << k * 1.0 << ",0,0,10,0\n";
    }
    os << "sc1,77,pedestrian," << k << ",30," << (-5 + k * 0.1) << ",1.5707963,0,1\n";
  }
  return os.str();
}

TEST(DatasetAdapter, OneScenarioTwoAgents)
{
  const auto r = adapt_external(dataset_rows(110, true));
  EXPECT_EQ(r.error_count(), 0u);
  ASSERT_EQ(r.scenarios.size(), 1u);
  const auto & sc = r.scenarios[0];
  ASSERT_EQ(sc.agents.size(), 2u);
  EXPECT_EQ(sc.agents.at("AV").size(), 110u);
  EXPECT_EQ(sc.agents.at("77").size(), 110u);
  const auto & ped = sc.agents.at("77")[0];
  EXPECT_EQ(ped.type, AgentType::kPedestrian);
  EXPECT_DOUBLE_EQ(ped.length, 0.6);
  const auto & av = sc.agents.at("AV")[5];
  EXPECT_EQ(av.t, Timestamp::from_seconds(0.5));
  EXPECT_DOUBLE_EQ(av.speed, 10.0);
  EXPECT_DOUBLE_EQ(av.length, 4.8);
  EXPECT_NEAR(sc.duration(), 10.9, 1e-12);
}

TEST(DatasetAdapter, MissingAvIsSkipped)
{
  const auto r = adapt_external(dataset_rows(5, false));
  EXPECT_TRUE(r.scenarios.empty());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].severity, Diagnostic::Severity::kWarning);
}

TEST(DatasetAdapter, UnknownLayoutIsRejected)
{
  EXPECT_THROW(adapt_external(dataset_rows(5, true, "av2-lateral-conflict/9")), UnsupportedFormatError);
}

TEST(DatasetAdapter, ObjectTypeMapping)
{
  EXPECT_EQ(map_object_type("bus"), AgentType::kVehicle);
  EXPECT_EQ(map_object_type("motorcyclist"), AgentType::kCyclist);
  EXPECT_EQ(map_object_type("static"), AgentType::kOther);
  EXPECT_DOUBLE_EQ(default_footprint("bus").length, 12.0);
}

TEST(DatasetAdapter, StationaryFramesKeepHeading)
{
  std::string text =
    "# layout: av2-lateral-conflict/1\n"
    "scenario_id,track_id,object_type,timestep,position_x,position_y,heading,velocity_x,velocity_y\n"
    "s,AV,vehicle,0,0,0,0.5,1,0\n"
    "s,AV,vehicle,1,0,0,2.5,0.01,0\n";
  const auto r = adapt_external(text);
  ASSERT_EQ(r.scenarios.size(), 1u);
  EXPECT_DOUBLE_EQ(r.scenarios[0].agents.at("AV")[1].heading, 0.5);
  EXPECT_FALSE(r.diagnostics.empty());
}

}  // namespace
}  // namespace mei::io
