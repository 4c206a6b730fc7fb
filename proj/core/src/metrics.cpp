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

#include "mei/metrics.hpp"

#include "mei/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace mei::metrics
{

using geometry::ConvexPolygon;
using geometry::Vec2;

std::string_view to_string(QPredicate q) noexcept
{
  switch (q) {
    case QPredicate::kApproachDistance:
      return "approach_distance";
    case QPredicate::kAlwaysTrue:
      return "always_true";
  }
  return "approach_distance";
}

std::optional<QPredicate> parse_q_predicate(std::string_view text) noexcept
{
  if (text == "approach_distance") {
    return QPredicate::kApproachDistance;
  }
  if (text == "always_true") {
    return QPredicate::kAlwaysTrue;
  }
  return std::nullopt;
}

void MetricsConfig::validate() const
{
  if (!std::isfinite(d_safe) || d_safe < 0.0) {
    throw InputError("d_safe must be a finite value >= 0");
  }
  if (!std::isfinite(tem_star) || !(tem_star > 0.0)) {
    throw InputError("tem_star must be > 0");
  }
  if (!std::isfinite(pet_grid) || !(pet_grid > 0.0)) {
    throw InputError("pet_grid must be > 0");
  }
  if (mei_cap && !(*mei_cap > 0.0)) {
    throw InputError("mei_cap must be > 0 when set");
  }
}

RelativeKinematics relative_kinematics(const AgentState & a, const AgentState & b)
{
  if (a.t != b.t) {
    throw InputError(
      "relative kinematics needs equal timestamps (" + std::to_string(a.t.seconds()) + " vs " +
      std::to_string(b.t.seconds()) + ")");
  }
  RelativeKinematics rk{a.position() - b.position(), a.velocity() - b.velocity(), std::nullopt};
  const double speed = rk.v_ab.norm();
  if (speed >= kMinRelativeSpeed) {
    rk.theta_ab = rk.v_ab / speed;
  }
  return rk;
}

namespace
{

// max_i |corner_i x theta|: for a rectangle the maximizing corner gives
// (l/2)|u x theta| + (w/2)|u_perp x theta|.
double projection_radius(const AgentState & s, Vec2 theta)
{
  double best = 0.0;
  for (const Vec2 & c : geometry::corners(Vec2{}, s.heading, s.length, s.width)) {
    best = std::max(best, std::abs(geometry::cross2(c, theta)));
  }
  return best;
}

// First time the ray enters the closed polygon grown by `margin`.
std::optional<double> ray_entry_inflated(
  Vec2 origin, Vec2 direction, const ConvexPolygon & poly, double margin)
{
  std::optional<double> best = geometry::ray_polygon_entry(origin, direction, poly);
  if (margin <= 0.0) {
    return best;
  }
  const auto consider = [&best](std::optional<double> t) {
    if (t && (!best || *t < *best)) {
      best = t;
    }
  };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 v0 = poly.vertex(i);
    const Vec2 v1 = poly.vertex(i + 1);
    const Vec2 edge = v1 - v0;
    const Vec2 outward = Vec2{edge.y(), -edge.x()} / edge.norm() * margin;
    consider(geometry::ray_polygon_entry(
      origin, direction, ConvexPolygon({v0, v1, v1 + outward, v0 + outward})));
    consider(geometry::ray_disc_entry(origin, direction, v0, margin));
  }
  return best;
}

}  // namespace

std::optional<InDepthTerms> in_depth_terms(
  const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  const RelativeKinematics rk = relative_kinematics(a, b);
  if (!rk.theta_ab) {
    return std::nullopt;
  }
  InDepthTerms terms;
  terms.d_a = projection_radius(a, *rk.theta_ab);
  terms.d_b = projection_radius(b, *rk.theta_ab);
  terms.d_ct = std::abs(geometry::cross2(rk.p_ab, *rk.theta_ab));
  terms.in_depth = terms.d_a + terms.d_b - terms.d_ct + cfg.d_safe;
  return terms;
}

std::optional<double> in_depth(const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  if (auto terms = in_depth_terms(a, b, cfg)) {
    return terms->in_depth;
  }
  return std::nullopt;
}

ConvexPolygon relative_obstacle(const AgentState & a, const AgentState & b)
{
  const auto a_offsets = geometry::corner_offsets_ccw(a.heading, a.length, a.width);
  const auto b_offsets = geometry::corner_offsets_ccw(b.heading, b.length, b.width);
  const ConvexPolygon a_reflected({-a_offsets[0], -a_offsets[1], -a_offsets[2], -a_offsets[3]});
  const ConvexPolygon b_shape({b_offsets[0], b_offsets[1], b_offsets[2], b_offsets[3]});
  return geometry::minkowski_sum(b_shape, a_reflected);
}

std::optional<double> tem_ttc2d(const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  const RelativeKinematics rk = relative_kinematics(a, b);
  const ConvexPolygon obstacle = relative_obstacle(a, b);
  if (obstacle.contains(rk.p_ab) || geometry::sat_overlap(a.footprint(), b.footprint())) {
    return 0.0;
  }
  if (cfg.d_safe > 0.0) {
    const auto np = geometry::nearest_points(
      ConvexPolygon::from_box(a.footprint()), ConvexPolygon::from_box(b.footprint()));
    if (np.gap <= cfg.d_safe) {
      return 0.0;
    }
  }
  if (!rk.theta_ab) {
    return std::nullopt;
  }
  return ray_entry_inflated(rk.p_ab, rk.v_ab, obstacle, cfg.d_safe);
}

std::optional<double> mei(const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  const auto tem = tem_ttc2d(a, b, cfg);
  if (!tem || *tem <= 0.0) {
    return std::nullopt;
  }
  const auto depth = in_depth(a, b, cfg);
  if (!depth) {
    return std::nullopt;
  }
  const double value = *depth / *tem;
  return cfg.mei_cap ? std::min(value, *cfg.mei_cap) : value;
}

std::optional<double> act(const AgentState & a, const AgentState & b)
{
  const RelativeKinematics rk = relative_kinematics(a, b);
  if (geometry::sat_overlap(a.footprint(), b.footprint())) {
    return 0.0;
  }
  const auto np = geometry::nearest_points(
    ConvexPolygon::from_box(a.footprint()), ConvexPolygon::from_box(b.footprint()));
  if (!(np.gap > 0.0)) {
    return 0.0;
  }
  const Vec2 toward_b = (np.on_b - np.on_a) / np.gap;
  const double closing_rate = geometry::dot(rk.v_ab, toward_b);
  if (closing_rate <= kMinRelativeSpeed) {
    return std::nullopt;
  }
  return np.gap / closing_rate;
}

bool condition_q(const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  switch (cfg.q_predicate) {
    case QPredicate::kAlwaysTrue:
      return true;
    case QPredicate::kApproachDistance: {
      const RelativeKinematics rk = relative_kinematics(a, b);
      return geometry::dot(rk.p_ab, rk.v_ab) < 0.0;
    }
  }
  return false;
}

FrameMetrics compute_frame(const AgentState & a, const AgentState & b, const MetricsConfig & cfg)
{
  FrameMetrics fm;
  fm.t = a.t;
  fm.overlap = geometry::sat_overlap(a.footprint(), b.footprint());
  fm.q_active = condition_q(a, b, cfg);
  if (const auto terms = in_depth_terms(a, b, cfg)) {
    fm.in_depth = terms->in_depth;
    fm.d_ct = terms->d_ct;
    fm.d_a = terms->d_a;
    fm.d_b = terms->d_b;
  }
  fm.tem = fm.overlap ? std::optional<double>(0.0) : tem_ttc2d(a, b, cfg);
  if (fm.tem && *fm.tem > 0.0 && fm.in_depth) {
    const double value = *fm.in_depth / *fm.tem;
    fm.mei = cfg.mei_cap ? std::min(value, *cfg.mei_cap) : value;
  }
  fm.act = act(a, b);
  return fm;
}

}  // namespace mei::metrics
