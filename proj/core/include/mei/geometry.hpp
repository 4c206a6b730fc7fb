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

#ifndef MEI__GEOMETRY_HPP_
#define MEI__GEOMETRY_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace mei::geometry
{

/// 2D vector in meters (positions) or m/s (velocities).
///
/// Components must be finite; the constructor throws std::invalid_argument
/// otherwise.
class Vec2
{
public:
  constexpr Vec2() = default;
  Vec2(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  double norm() const noexcept;
  double squared_norm() const noexcept { return x_ * x_ + y_ * y_; }
  // Counterclockwise quarter turn.
  Vec2 perp() const noexcept { return Vec2{-y_, x_, Unchecked{}}; }

  friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x_ + b.x_, a.y_ + b.y_, Unchecked{}}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x_ - b.x_, a.y_ - b.y_, Unchecked{}}; }
  friend Vec2 operator-(Vec2 a) noexcept { return {-a.x_, -a.y_, Unchecked{}}; }
  friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x_, s * a.y_, Unchecked{}}; }
  friend Vec2 operator*(Vec2 a, double s) noexcept { return s * a; }
  friend Vec2 operator/(Vec2 a, double s) noexcept { return {a.x_ / s, a.y_ / s, Unchecked{}}; }
  friend bool operator==(Vec2 a, Vec2 b) noexcept = default;

  static Vec2 from_angle(double radians) noexcept;

private:
  struct Unchecked
  {
  };
  constexpr Vec2(double x, double y, Unchecked) noexcept : x_(x), y_(y) {}

  double x_ = 0.0;
  double y_ = 0.0;
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x() * b.x() + a.y() * b.y(); }

/// Signed 2D cross product a.x * b.y - a.y * b.x.
inline double cross2(Vec2 a, Vec2 b) noexcept { return a.x() * b.y() - a.y() * b.x(); }

double distance(Vec2 a, Vec2 b) noexcept;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians) noexcept;

/// Rectangle footprint centred on `center`, long axis along `heading`
/// (radians, CCW from +x).
class OrientedBox
{
public:
  OrientedBox(Vec2 center, double heading, double length, double width);

  Vec2 center() const noexcept { return center_; }
  double heading() const noexcept { return heading_; }
  double length() const noexcept { return length_; }
  double width() const noexcept { return width_; }
  Vec2 axis() const noexcept { return Vec2::from_angle(heading_); }

  OrientedBox translated(Vec2 offset) const { return {center_ + offset, heading_, length_, width_}; }

private:
  Vec2 center_;
  double heading_;
  double length_;
  double width_;
};

/// Corners in the order front-right, front-left, rear-right, rear-left:
///   center + s_l * (l/2) * axis + s_w * (w/2) * axis.perp()
/// with (s_l, s_w) = (+,-), (+,+), (-,-), (-,+).
std::array<Vec2, 4> corners(const OrientedBox & box);

/// Same as above on raw parameters; accepts zero extents (segments, points).
std::array<Vec2, 4> corners(Vec2 center, double heading, double length, double width);

/// Corner offsets relative to the box center, counterclockwise.
std::array<Vec2, 4> corner_offsets_ccw(double heading, double length, double width);

/// Closed-set separating-axis test; touching boxes overlap.
bool sat_overlap(const OrientedBox & a, const OrientedBox & b);

/// Strictly convex polygon with counterclockwise vertices.
///
/// Construction drops repeated points, merges collinear vertices (cross
/// product magnitude <= 1e-12 relative to the edge lengths) and reverses
/// clockwise input. Throws std::invalid_argument when fewer than three
/// vertices remain or the input is not convex.
class ConvexPolygon
{
public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon from_box(const OrientedBox & box);

  std::span<const Vec2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  bool contains(Vec2 p, double tolerance = 0.0) const noexcept;
  ConvexPolygon translated(Vec2 offset) const;
  /// Point reflection through the origin, {-p : p in this}.
  ConvexPolygon reflected() const;

private:
  struct Trusted
  {
  };
  ConvexPolygon(std::vector<Vec2> vertices, Trusted) noexcept : vertices_(std::move(vertices)) {}

  std::vector<Vec2> vertices_;

  friend ConvexPolygon minkowski_sum(const ConvexPolygon &, const ConvexPolygon &);
};

/// Removes duplicate and collinear vertices from a CCW cycle.
std::vector<Vec2> merge_collinear(std::span<const Vec2> ccw, double tolerance = 1e-12);

/// {p + q : p in a, q in b}. Callers wanting a difference pass b.reflected().
ConvexPolygon minkowski_sum(const ConvexPolygon & a, const ConvexPolygon & b);
/// Minkowski sum with a single point is a translation.
ConvexPolygon minkowski_sum(const ConvexPolygon & a, Vec2 point);

/// Parameter interval [entry, exit] of the full line origin + t * direction
/// inside `poly` (closed), or nullopt when the line misses.
std::optional<std::array<double, 2>> line_polygon_interval(
  Vec2 origin, Vec2 direction, const ConvexPolygon & poly);

/// Smallest t >= 0 with origin + t * direction in the closed polygon.
/// Returns 0 when origin is already inside. Throws on a zero direction.
std::optional<double> ray_polygon_entry(Vec2 origin, Vec2 direction, const ConvexPolygon & poly);

/// Smallest t >= 0 with origin + t * direction inside the closed disc.
std::optional<double> ray_disc_entry(Vec2 origin, Vec2 direction, Vec2 center, double radius);

bool polygons_overlap(const ConvexPolygon & a, const ConvexPolygon & b);

struct NearestPoints
{
  Vec2 on_a;
  Vec2 on_b;
  double gap = 0.0;
};

/// Closest pair between two convex polygons. When they overlap the gap is 0
/// and both points coincide at a common point.
NearestPoints nearest_points(const ConvexPolygon & a, const ConvexPolygon & b);

/// Closest point to `p` on segment [a, b].
Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) noexcept;

}  // namespace mei::geometry

#endif  // MEI__GEOMETRY_HPP_
