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

#ifndef MEI__METRICS_HPP_
#define MEI__METRICS_HPP_

#include "mei/agent_state.hpp"
#include "mei/geometry.hpp"

#include <optional>
#include <string_view>

namespace mei::metrics
{

/// Stand-ins for the conflict-detection gate that precedes classification.
enum class QPredicate {
  kApproachDistance,  ///< center distance strictly decreasing: p_ab . v_ab < 0
  kAlwaysTrue,
};

std::string_view to_string(QPredicate q) noexcept;
std::optional<QPredicate> parse_q_predicate(std::string_view text) noexcept;

struct MetricsConfig
{
  double d_safe = 0.0;    ///< m, safety-region margin
  double tem_star = 3.0;  ///< s, critical TEM threshold
  QPredicate q_predicate = QPredicate::kApproachDistance;
  std::optional<double> mei_cap;  ///< m/s, clamps reported MEI
  double pet_grid = 0.1;          ///< m, PET conflict-zone raster

  /// Throws mei::InputError on d_safe < 0, tem_star <= 0, pet_grid <= 0 or
  /// a non-positive cap.
  void validate() const;
};

/// Relative motion of A with respect to B.
struct RelativeKinematics
{
  geometry::Vec2 p_ab;  ///< P_A - P_B
  geometry::Vec2 v_ab;  ///< v_A - v_B
  std::optional<geometry::Vec2> theta_ab;  ///< unit v_ab; empty when |v_ab| < kMinRelativeSpeed
};

inline constexpr double kMinRelativeSpeed = 1e-9;  // m/s

/// Throws mei::InputError if the two states carry different timestamps.
RelativeKinematics relative_kinematics(const AgentState & a, const AgentState & b);

/// Terms of the interaction depth. All distances are non-negative.
struct InDepthTerms
{
  double d_a = 0.0;   ///< half-extent of A across the relative velocity
  double d_b = 0.0;
  double d_ct = 0.0;  ///< tangential center distance |P_AB x theta_AB|
  double in_depth = 0.0;
};

std::optional<InDepthTerms> in_depth_terms(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

/// d_A + d_B - D_c^T + d_safe; empty when the relative velocity vanishes.
std::optional<double> in_depth(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

/// Configuration-space obstacle {x_b - x_a : x_a in A, x_b in B} with both
/// footprints centered at the origin. A moving along v_ab from P_AB touches B
/// exactly when P_AB + t * v_ab enters this polygon.
geometry::ConvexPolygon relative_obstacle(const AgentState & a, const AgentState & b);

/// Exact first-contact time of the two footprints under constant velocity
/// and fixed headings (2D TTC). With d_safe > 0 contact means a gap of at
/// most d_safe between the bare footprints. 0 when already in contact,
/// empty when no forward-time contact exists.
std::optional<double> tem_ttc2d(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

/// InDepth / TEM, empty when either is undefined or TEM == 0.
std::optional<double> mei(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

/// Nearest-point anticipated collision time: gap between the closest points
/// of the two footprints divided by the closing rate along the line joining
/// them. 0 when overlapping; empty when not closing.
std::optional<double> act(const AgentState & a, const AgentState & b);

bool condition_q(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

/// Everything computed for one agent pair at one instant.
struct FrameMetrics
{
  Timestamp t;
  std::optional<double> in_depth;
  std::optional<double> tem;
  std::optional<double> mei;
  std::optional<double> act;
  bool q_active = false;
  bool overlap = false;
  std::optional<double> d_ct;
  std::optional<double> d_a;
  std::optional<double> d_b;
};

FrameMetrics compute_frame(const AgentState & a, const AgentState & b, const MetricsConfig & cfg);

}  // namespace mei::metrics

#endif  // MEI__METRICS_HPP_
