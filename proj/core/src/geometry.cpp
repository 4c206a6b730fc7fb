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

#include "mei/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mei::geometry
{

Vec2::Vec2(double x, double y) : x_(x), y_(y)
{
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("Vec2 components must be finite");
  }
}

double Vec2::norm() const noexcept { return std::hypot(x_, y_); }

Vec2 Vec2::from_angle(double radians) noexcept
{
  return {std::cos(radians), std::sin(radians), Unchecked{}};
}

double distance(Vec2 a, Vec2 b) noexcept { return (a - b).norm(); }

double normalize_angle(double radians) noexcept
{
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(radians, kTwoPi);
  if (r <= -std::numbers::pi) {
    r += kTwoPi;
  }
  return r;
}

OrientedBox::OrientedBox(Vec2 center, double heading, double length, double width)
: center_(center), heading_(heading), length_(length), width_(width)
{
  if (!std::isfinite(heading) || !std::isfinite(length) || !std::isfinite(width)) {
    throw std::invalid_argument("OrientedBox parameters must be finite");
  }
  if (!(length > 0.0) || !(width > 0.0)) {
    throw std::invalid_argument("OrientedBox length and width must be positive");
  }
}

std::array<Vec2, 4> corners(Vec2 center, double heading, double length, double width)
{
  const Vec2 along = Vec2::from_angle(heading) * (0.5 * length);
  const Vec2 across = Vec2::from_angle(heading).perp() * (0.5 * width);
  return {
    center + along - across,
    center + along + across,
    center - along - across,
    center - along + across,
  };
}

std::array<Vec2, 4> corners(const OrientedBox & box)
{
  return corners(box.center(), box.heading(), box.length(), box.width());
}

std::array<Vec2, 4> corner_offsets_ccw(double heading, double length, double width)
{
  const Vec2 along = Vec2::from_angle(heading) * (0.5 * length);
  const Vec2 across = Vec2::from_angle(heading).perp() * (0.5 * width);
  return {along - across, along + across, -along + across, -along - across};
}

namespace
{

// Half extent of a box projected onto a unit axis.
double projected_radius(const OrientedBox & box, Vec2 axis) noexcept
{
  const Vec2 u = box.axis();
  return 0.5 * box.length() * std::abs(dot(u, axis)) +
         0.5 * box.width() * std::abs(dot(u.perp(), axis));
}

double signed_area2(std::span<const Vec2> pts) noexcept
{
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    area += cross2(pts[i], pts[(i + 1) % pts.size()]);
  }
  return area;
}

// Rotates so that the lowest (then leftmost) vertex comes first.
std::vector<Vec2> rotate_to_lowest(std::span<const Vec2> pts)
{
  const auto lowest = std::min_element(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
  });
  std::vector<Vec2> out(pts.begin(), pts.end());
  std::rotate(out.begin(), out.begin() + (lowest - pts.begin()), out.end());
  return out;
}

}  // namespace

bool sat_overlap(const OrientedBox & a, const OrientedBox & b)
{
  const Vec2 offset = b.center() - a.center();
  const std::array<Vec2, 4> axes{a.axis(), a.axis().perp(), b.axis(), b.axis().perp()};
  for (const Vec2 & axis : axes) {
    const double separation = std::abs(dot(offset, axis));
    if (separation > projected_radius(a, axis) + projected_radius(b, axis)) {
      return false;
    }
  }
  return true;
}

std::vector<Vec2> merge_collinear(std::span<const Vec2> ccw, double tolerance)
{
  std::vector<Vec2> pts;
  pts.reserve(ccw.size());
  for (const Vec2 & p : ccw) {
    if (pts.empty() || distance(pts.back(), p) > tolerance) {
      pts.push_back(p);
    }
  }
  while (pts.size() > 1 && distance(pts.front(), pts.back()) <= tolerance) {
    pts.pop_back();
  }

  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
      const Vec2 prev = pts[(i + pts.size() - 1) % pts.size()];
      const Vec2 next = pts[(i + 1) % pts.size()];
      const Vec2 e1 = pts[i] - prev;
      const Vec2 e2 = next - pts[i];
      const double scale = e1.norm() * e2.norm();
      if (std::abs(cross2(e1, e2)) <= tolerance * std::max(scale, 1.0) && dot(e1, e2) > 0.0) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return pts;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices)
{
  if (signed_area2(vertices) < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
  }
  vertices_ = merge_collinear(vertices);
  if (vertices_.size() < 3) {
    throw std::invalid_argument(
      "ConvexPolygon needs at least 3 non-collinear vertices, got " +
      std::to_string(vertices_.size()));
  }
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross2(e1, e2) <= 0.0) {
      throw std::invalid_argument("ConvexPolygon vertices are not strictly convex");
    }
  }
}

ConvexPolygon ConvexPolygon::from_box(const OrientedBox & box)
{
  const auto offsets = corner_offsets_ccw(box.heading(), box.length(), box.width());
  std::vector<Vec2> pts;
  pts.reserve(4);
  for (const Vec2 & o : offsets) {
    pts.push_back(box.center() + o);
  }
  return ConvexPolygon(std::move(pts));
}

bool ConvexPolygon::contains(Vec2 p, double tolerance) const noexcept
{
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 e = vertices_[(i + 1) % n] - a;
    if (cross2(e, p - a) < -tolerance * e.norm()) {
      return false;
    }
  }
  return true;
}

ConvexPolygon ConvexPolygon::translated(Vec2 offset) const
{
  std::vector<Vec2> pts;
  pts.reserve(vertices_.size());
  for (const Vec2 & v : vertices_) {
    pts.push_back(v + offset);
  }
  return ConvexPolygon(std::move(pts), Trusted{});
}

ConvexPolygon ConvexPolygon::reflected() const
{
  // Point reflection preserves orientation.
  std::vector<Vec2> pts;
  pts.reserve(vertices_.size());
  for (const Vec2 & v : vertices_) {
    pts.push_back(-v);
  }
  return ConvexPolygon(std::move(pts), Trusted{});
}

ConvexPolygon minkowski_sum(const ConvexPolygon & a, const ConvexPolygon & b)
{
  std::vector<Vec2> p = rotate_to_lowest(a.vertices());
  std::vector<Vec2> q = rotate_to_lowest(b.vertices());
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  p.push_back(p[0]);
  p.push_back(p[1]);
  q.push_back(q[0]);
  q.push_back(q[1]);

  std::vector<Vec2> out;
  out.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    out.push_back(p[i] + q[j]);
    const double turn = cross2(p[i + 1] - p[i], q[j + 1] - q[j]);
    if (turn >= 0.0 && i < n) {
      ++i;
    }
    if (turn <= 0.0 && j < m) {
      ++j;
    }
  }
  std::vector<Vec2> merged = merge_collinear(out);
  if (merged.size() < 3) {
    throw std::logic_error("degenerate Minkowski sum");
  }
  return ConvexPolygon(std::move(merged), ConvexPolygon::Trusted{});
}

ConvexPolygon minkowski_sum(const ConvexPolygon & a, Vec2 point) { return a.translated(point); }

std::optional<std::array<double, 2>> line_polygon_interval(
  Vec2 origin, Vec2 direction, const ConvexPolygon & poly)
{
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v = poly.vertex(i);
    const Vec2 e = poly.vertex(i + 1) - v;
    // Inside half-plane: cross(e, x - v) >= 0.
    const double offset = cross2(e, origin - v);
    const double rate = cross2(e, direction);
    if (rate == 0.0) {
      if (offset < 0.0) {
        return std::nullopt;
      }
      continue;
    }
    const double t = -offset / rate;
    if (rate > 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
    if (lo > hi) {
      return std::nullopt;
    }
  }
  return std::array<double, 2>{lo, hi};
}

std::optional<double> ray_polygon_entry(Vec2 origin, Vec2 direction, const ConvexPolygon & poly)
{
  if (direction.squared_norm() == 0.0) {
    throw std::invalid_argument("ray direction must be non-zero");
  }
  const auto interval = line_polygon_interval(origin, direction, poly);
  if (!interval || (*interval)[1] < 0.0) {
    return std::nullopt;
  }
  return std::max((*interval)[0], 0.0);
}

std::optional<double> ray_disc_entry(Vec2 origin, Vec2 direction, Vec2 center, double radius)
{
  const Vec2 rel = origin - center;
  const double c = rel.squared_norm() - radius * radius;
  if (c <= 0.0) {
    return 0.0;
  }
  const double a = direction.squared_norm();
  const double half_b = dot(rel, direction);
  if (half_b >= 0.0 || a == 0.0) {
    return std::nullopt;
  }
  const double disc = half_b * half_b - a * c;
  if (disc < 0.0) {
    return std::nullopt;
  }
  // Smaller root, written to avoid cancellation: t = c / (-half_b + sqrt(disc)).
  return c / (-half_b + std::sqrt(disc));
}

namespace
{

// True when some edge normal of `a` separates the two polygons.
bool has_separating_edge(const ConvexPolygon & a, const ConvexPolygon & b)
{
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v = a.vertex(i);
    const Vec2 e = a.vertex(i + 1) - v;
    bool all_outside = true;
    for (const Vec2 & w : b.vertices()) {
      if (cross2(e, w - v) >= 0.0) {
        all_outside = false;
        break;
      }
    }
    if (all_outside) {
      return true;
    }
  }
  return false;
}

std::optional<Vec2> segment_intersection(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1)
{
  const Vec2 r = p1 - p0;
  const Vec2 s = q1 - q0;
  const double denom = cross2(r, s);
  if (denom == 0.0) {
    return std::nullopt;
  }
  const double t = cross2(q0 - p0, s) / denom;
  const double u = cross2(q0 - p0, r) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) {
    return std::nullopt;
  }
  return p0 + t * r;
}

NearestPoints closest_boundary_pair(const ConvexPolygon & a, const ConvexPolygon & b)
{
  NearestPoints best{a.vertex(0), b.vertex(0), std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Vec2 on_b = closest_point_on_segment(a.vertex(i), b.vertex(j), b.vertex(j + 1));
      const double d_ab = distance(a.vertex(i), on_b);
      if (d_ab < best.gap) {
        best = {a.vertex(i), on_b, d_ab};
      }
      const Vec2 on_a = closest_point_on_segment(b.vertex(j), a.vertex(i), a.vertex(i + 1));
      const double d_ba = distance(b.vertex(j), on_a);
      if (d_ba < best.gap) {
        best = {on_a, b.vertex(j), d_ba};
      }
    }
  }
  return best;
}

}  // namespace

bool polygons_overlap(const ConvexPolygon & a, const ConvexPolygon & b)
{
  return !has_separating_edge(a, b) && !has_separating_edge(b, a);
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) noexcept
{
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 == 0.0) {
    return a;
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

NearestPoints nearest_points(const ConvexPolygon & a, const ConvexPolygon & b)
{
  if (!polygons_overlap(a, b)) {
    return closest_boundary_pair(a, b);
  }
  for (const Vec2 & v : a.vertices()) {
    if (b.contains(v)) {
      return {v, v, 0.0};
    }
  }
  for (const Vec2 & v : b.vertices()) {
    if (a.contains(v)) {
      return {v, v, 0.0};
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (auto p = segment_intersection(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1))) {
        return {*p, *p, 0.0};
      }
    }
  }
  // Grazing contact lost to rounding; the boundary pair is within an ulp.
  const NearestPoints pair = closest_boundary_pair(a, b);
  const Vec2 mid = 0.5 * (pair.on_a + pair.on_b);
  return {mid, mid, 0.0};
}

}  // namespace mei::geometry
