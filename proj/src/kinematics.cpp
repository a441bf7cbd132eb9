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

#include <medax/kinematics.hpp>
#include <medax/errors.hpp>

#include <string>

namespace medax {

//==============================================================================
std::string_view to_string(ModelKind kind)
{
  switch (kind)
  {
    case ModelKind::DiffDrive: return "diff_drive";
    case ModelKind::Dubins: return "dubins";
    case ModelKind::Truck: return "truck";
  }
  return "unknown";
}

//==============================================================================
ModelKind model_from_string(std::string_view name)
{
  if (name == "diff_drive")
    return ModelKind::DiffDrive;
  if (name == "dubins")
    return ModelKind::Dubins;
  if (name == "truck")
    return ModelKind::Truck;
  throw LoadError("unknown agent model '" + std::string(name) + "'");
}

//==============================================================================
Limits default_limits(ModelKind kind)
{
  Limits l;
  if (kind == ModelKind::Truck)
    l.kappa_max = 0.22;
  return l;
}

//==============================================================================
AgentState make_agent(int id, ModelKind model, const Eigen::Vector3d& start,
  const Vector2& goal)
{
  AgentState a;
  a.id = id;
  a.model = model;
  a.pose = start;
  a.pose.z() = wrap_angle(start.z());
  a.trailer_angle = a.pose.z();
  a.limits = default_limits(model);
  a.goal = goal;
  a.prev_pos = a.position();
  return a;
}

//==============================================================================
Twist twist_of(const AgentState& state, const ControlInput& u)
{
  if (const auto* w = std::get_if<WheelSpeeds>(&u))
  {
    return {0.5 * (w->left + w->right),
      (w->right - w->left) / state.body.width};
  }
  const auto& sc = std::get<SpeedCurvature>(u);
  return {sc.speed, sc.speed * sc.curvature};
}

//==============================================================================
ControlInput control_from_twist(const AgentState& state, const Twist& twist)
{
  if (state.model == ModelKind::Dubins)
  {
    const double kappa = std::abs(twist.v) > 1e-12 ? twist.omega / twist.v : 0.0;
    return SpeedCurvature{twist.v, kappa};
  }
  const double half = 0.5 * state.body.width * twist.omega;
  return WheelSpeeds{twist.v - half, twist.v + half};
}

//==============================================================================
ClampedControl clamp_control(const AgentState& state, const ControlInput& u)
{
  const Limits& lim = state.limits;
  bool clamped = false;

  if (state.model == ModelKind::Dubins)
  {
    SpeedCurvature sc = std::get<SpeedCurvature>(u);
    const double speed = std::clamp(sc.speed, 0.0, lim.v_max);
    const double kappa = std::clamp(sc.curvature, -lim.kappa_max, lim.kappa_max);
    clamped = speed != sc.speed || kappa != sc.curvature;
    return {SpeedCurvature{speed, kappa}, clamped};
  }

  const WheelSpeeds in = std::get<WheelSpeeds>(u);
  Twist t = twist_of(state, in);

  if (state.model == ModelKind::Truck)
  {
    // Forward only, curvature bounded like a car.
    t.v = std::clamp(t.v, 0.0, lim.v_max);
    const double w_max = lim.kappa_max * t.v;
    t.omega = std::clamp(t.omega, -w_max, w_max);
  }
  t.omega = std::clamp(t.omega, -lim.omega_max, lim.omega_max);

  WheelSpeeds out = std::get<WheelSpeeds>(control_from_twist(state, t));
  const double peak = std::max(std::abs(out.left), std::abs(out.right));
  if (peak > lim.v_max)
  {
    out.left *= lim.v_max / peak;
    out.right *= lim.v_max / peak;
  }

  clamped = std::abs(out.left - in.left) > 1e-12
    || std::abs(out.right - in.right) > 1e-12;
  return {out, clamped};
}

//==============================================================================
ModelState model_derivative(const AgentState& params, const ModelState& x,
  const Twist& twist)
{
  ModelState dx;
  dx[0] = twist.v * std::cos(x[2]);
  dx[1] = twist.v * std::sin(x[2]);
  dx[2] = twist.omega;
  dx[3] = params.model == ModelKind::Truck
    ? twist.v / params.trailer.link_length * std::sin(x[2] - x[3])
    : 0.0;
  return dx;
}

//==============================================================================
ModelState rk4_step(const AgentState& params, const ModelState& x,
  const Twist& twist, double h)
{
  const ModelState k1 = model_derivative(params, x, twist);
  const ModelState k2 = model_derivative(params, x + 0.5 * h * k1, twist);
  const ModelState k3 = model_derivative(params, x + 0.5 * h * k2, twist);
  const ModelState k4 = model_derivative(params, x + h * k3, twist);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

//==============================================================================
StepResult step(const AgentState& state, const ControlInput& u, double dt,
  double max_substep)
{
  const ClampedControl c = clamp_control(state, u);
  const Twist twist = twist_of(state, c.control);

  ModelState x(state.pose.x(), state.pose.y(), state.pose.z(),
    state.trailer_angle);
  const int substeps =
    std::max(1, static_cast<int>(std::ceil(dt / max_substep - 1e-9)));
  const double h = dt / substeps;
  for (int k = 0; k < substeps; ++k)
    x = rk4_step(state, x, twist, h);

  StepResult out{state, c.clamped};
  out.state.prev_pos = state.position();
  out.state.pose = Eigen::Vector3d(x[0], x[1], wrap_angle(x[2]));
  out.state.trailer_angle = state.model == ModelKind::Truck
    ? wrap_angle(x[3])
    : out.state.pose.z();
  return out;
}

//==============================================================================
Footprint footprint(const AgentState& state)
{
  Footprint fp;
  fp.boxes.push_back(make_box<double>(state.position(), state.heading(),
    state.body.length, state.body.width));

  if (state.model == ModelKind::Truck)
  {
    const Vector2 hitch =
      state.position() - 0.5 * state.body.length * state.heading_vector();
    const Vector2 trailer_dir(
      std::cos(state.trailer_angle), std::sin(state.trailer_angle));
    const Vector2 center = hitch - state.trailer.link_length * trailer_dir;
    fp.boxes.push_back(make_box<double>(center, state.trailer_angle,
      state.trailer.length, state.trailer.width));
  }
  return fp;
}

//==============================================================================
bool collide(const Footprint& a, const Footprint& b)
{
  for (const auto& ba : a.boxes)
  {
    for (const auto& bb : b.boxes)
    {
      if (boxes_overlap(ba, bb))
        return true;
    }
  }
  return false;
}

//==============================================================================
bool collide_env(const Footprint& a, const PolyEnvironment& env)
{
  for (const auto& box : a.boxes)
  {
    for (std::size_t k = 0; k < 4; ++k)
    {
      if (!env.contains(box[k]))
        return true;

      const Vector2& p = box[k];
      const Vector2& q = box[(k + 1) % 4];
      for (const Segment& s : env.segments())
      {
        if (segments_intersect(p, q, s.a, s.b))
          return true;
      }
    }

    for (const auto& hole : env.holes())
    {
      for (const Vector2& v : hole)
      {
        if (point_in_box(v, box))
          return true;
      }
    }
  }
  return false;
}

} // namespace medax
