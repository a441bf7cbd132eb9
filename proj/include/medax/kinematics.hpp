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

#ifndef MEDAX__KINEMATICS_HPP
#define MEDAX__KINEMATICS_HPP

#include <medax/environment.hpp>

#include <string_view>
#include <variant>
#include <vector>

namespace medax {

//==============================================================================
enum class ModelKind
{
  DiffDrive,
  Dubins,
  Truck
};

std::string_view to_string(ModelKind kind);

/// Parses "diff_drive", "dubins" or "truck". Throws LoadError otherwise.
ModelKind model_from_string(std::string_view name);

//==============================================================================
struct BodySize
{
  double length = 5.0;
  double width = 4.0;

  double bounding_radius() const
  {
    return 0.5 * std::sqrt(length * length + width * width);
  }
};

struct TrailerGeometry
{
  double length = 5.0;
  double width = 4.0;

  /// Hitch (rear center of the tractor) to trailer center.
  double link_length = 4.0;
};

struct Limits
{
  double v_max = 2.0;
  double omega_max = 1.5;
  double a_max = 4.0;

  /// Path curvature bound for car-like models (dubins, truck).
  double kappa_max = 0.19;
};

/// Default limits for a model (curvature 0.19 for dubins, 0.22 for truck).
Limits default_limits(ModelKind kind);

//==============================================================================
/// Pose of the body center; heading and trailer heading in (-pi, pi].
struct AgentState
{
  int id = 0;
  ModelKind model = ModelKind::DiffDrive;

  /// (x, y, heading)
  Eigen::Vector3d pose = Eigen::Vector3d::Zero();

  /// Absolute heading of the trailer (truck only).
  double trailer_angle = 0.0;

  BodySize body;
  TrailerGeometry trailer;
  Limits limits;
  double sensing_radius = 30.0;
  Vector2 goal = Vector2::Zero();

  /// Position one step earlier, for finite-difference velocity.
  Vector2 prev_pos = Vector2::Zero();

  Vector2 position() const { return pose.head<2>(); }
  double heading() const { return pose.z(); }
  Vector2 heading_vector() const
  {
    return Vector2(std::cos(pose.z()), std::sin(pose.z()));
  }
  double bounding_radius() const { return body.bounding_radius(); }

  /// (position - prev_pos) / dt
  Vector2 finite_difference_velocity(double dt) const
  {
    return (position() - prev_pos) / dt;
  }
};

AgentState make_agent(int id, ModelKind model, const Eigen::Vector3d& start,
  const Vector2& goal);

//==============================================================================
/// Left and right wheel speeds (diff drive, truck tractor). The track width is
/// the body width.
struct WheelSpeeds
{
  double left = 0.0;
  double right = 0.0;
};

/// Forward speed and path curvature (dubins).
struct SpeedCurvature
{
  double speed = 0.0;
  double curvature = 0.0;
};

using ControlInput = std::variant<WheelSpeeds, SpeedCurvature>;

/// Forward speed and yaw rate implied by a control for a given agent.
struct Twist
{
  double v = 0.0;
  double omega = 0.0;
};

Twist twist_of(const AgentState& state, const ControlInput& u);

/// Control realizing (v, omega) for the agent's model, before clamping.
ControlInput control_from_twist(const AgentState& state, const Twist& twist);

struct ClampedControl
{
  ControlInput control;
  bool clamped = false;
};

/// Projects a control onto the agent's limits.
ClampedControl clamp_control(const AgentState& state, const ControlInput& u);

//==============================================================================
/// Integration state (x, y, heading, trailer heading).
using ModelState = Eigen::Vector4d;

ModelState model_derivative(const AgentState& params, const ModelState& x,
  const Twist& twist);

/// One classical Runge-Kutta step of size h with the twist held constant.
ModelState rk4_step(const AgentState& params, const ModelState& x,
  const Twist& twist, double h);

struct StepResult
{
  AgentState state;
  bool clamped = false;
};

/// Integrates the model over dt (RK4 with substeps no longer than
/// `max_substep`), updates prev_pos, and rewraps angles.
StepResult step(const AgentState& state, const ControlInput& u, double dt,
  double max_substep = 0.05);

//==============================================================================
/// One rectangle, or two for a truck (tractor then trailer).
struct Footprint
{
  std::vector<OrientedBox<double>> boxes;
};

Footprint footprint(const AgentState& state);

/// Separating-axis overlap between any rectangles of two footprints.
bool collide(const Footprint& a, const Footprint& b);

/// Any footprint edge crosses the freespace boundary, any corner lies outside
/// the freespace, or a hole vertex lies inside the footprint.
bool collide_env(const Footprint& a, const PolyEnvironment& env);

} // namespace medax

#endif // MEDAX__KINEMATICS_HPP
