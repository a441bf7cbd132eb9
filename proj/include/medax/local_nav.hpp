/*
 * Copyright (C) 2026 The medax authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#ifndef MEDAX__LOCAL_NAV_HPP
#define MEDAX__LOCAL_NAV_HPP

#include <medax/kinematics.hpp>
#include <medax/skeleton.hpp>
#include <medax/velocity_lp.hpp>

#include <span>
#include <vector>

namespace medax {

//==============================================================================
struct NavParams
{
  /// ORCA time horizons (s).
  double tau_agent = 5.0;
  double tau_obstacle = 2.0;

  /// Added to the body bounding radius for avoidance.
  double eps_track = 0.5;

  /// Trajectory-following weights: tangent and lateral bias (1/s).
  double w_follow = 1.0;
  double w_bias = 0.3;

  /// Effective-center offset as a fraction of body length.
  double effective_offset_fraction = 0.5;

  /// Nearest boundary segments turned into velocity constraints.
  std::size_t max_obstacle_segments = 8;

  /// Clockwise rotation of the preferred velocity that breaks mirror
  /// symmetric encounters (rad).
  double tie_break_rotation = 1e-3;

  /// Minimum forward speed of forward-only models, as a fraction of the
  /// commanded speed.
  double creep_fraction = 0.25;

  /// Arc length searched ahead of the current vertex when re-localizing.
  double localize_window = 12.0;

  /// Frame period (s), used for finite-difference velocities.
  double dt = 0.05;
};

//==============================================================================
/// Skeleton path from the projected start to the projected goal, with the
/// index of the closest on-path vertex.
struct ReferenceTrajectory
{
  SkeletonPath path;
  std::size_t current_index = 0;
};

ReferenceTrajectory make_reference(
  const SkeletonGraph& g, const Vector2& start, const Vector2& goal);

/// Updates current_index. Normally it only moves forward, searching the
/// nearest vertex within `localize_window` of arc length. After a modulated
/// detour (`redirected`) the agent is re-localized on the whole path by
/// geodesic distance from its own projection.
void localize(ReferenceTrajectory& ref, const SkeletonGraph& g,
  const Vector2& p, bool redirected, const NavParams& params);

/// Negative gradient of the following and bias costs, norm-clamped to v_max.
Vector2 desired_velocity(const AgentState& state,
  const ReferenceTrajectory& ref, const NavParams& params);

//==============================================================================
/// Reciprocal velocity half-plane for `self` against `other`, both treated as
/// discs of radius (bounding radius + eps_track).
HalfPlane agent_constraint(const AgentState& self, const AgentState& other,
  const NavParams& params);

struct Disc
{
  Vector2 center;
  double radius;
};

/// One disc per footprint rectangle (tractor first, centered on the body),
/// radius enlarged by eps_track.
std::vector<Disc> avoidance_discs(const AgentState& a, const NavParams& params);

/// Half-planes for every pair of avoidance discs of `self` and `other`. All
/// discs of an agent share its finite-difference velocity.
std::vector<HalfPlane> agent_constraints(const AgentState& self,
  const AgentState& other, const NavParams& params);

/// Half-planes keeping the disc of `self` off the nearest boundary segments.
std::vector<HalfPlane> obstacle_constraints(const AgentState& self,
  const PolyEnvironment& env, const NavParams& params);

struct GrvoOutput
{
  ControlInput control;

  /// Holonomic velocity chosen by the linear program.
  Vector2 velocity;
  bool feasible;
};

/// Collision-avoiding control for `v_star`. Neighbors are previous-frame
/// snapshots; the caller filters them by sensing radius.
GrvoOutput grvo(const Vector2& v_star, const AgentState& self,
  std::span<const AgentState> neighbors, const PolyEnvironment& env,
  const NavParams& params);

/// Model controls whose effective center (offset D ahead of the body center)
/// moves with `velocity`, clamped to the agent limits.
ControlInput track_velocity(const AgentState& self, const Vector2& velocity,
  const NavParams& params);

/// Velocity of the effective center under control `u`.
Vector2 effective_center_velocity(const AgentState& self,
  const ControlInput& u, const NavParams& params);

} // namespace medax

#endif // MEDAX__LOCAL_NAV_HPP
