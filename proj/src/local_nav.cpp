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

#include <medax/local_nav.hpp>

#include <cmath>
#include <limits>

namespace medax {

//==============================================================================
ReferenceTrajectory make_reference(
  const SkeletonGraph& g, const Vector2& start, const Vector2& goal)
{
  ReferenceTrajectory ref;
  ref.path = shortest_path(g, project(g, start), project(g, goal));
  ref.current_index = 0;
  return ref;
}

//==============================================================================
void localize(ReferenceTrajectory& ref, const SkeletonGraph& g,
  const Vector2& p, bool redirected, const NavParams& params)
{
  const SkeletonPath& path = ref.path;
  if (path.vertices.size() <= 1)
  {
    ref.current_index = 0;
    return;
  }

  if (redirected)
  {
    const VertexId here = g.nearest_vertex(p);
    std::size_t best = ref.current_index;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.vertices.size(); ++k)
    {
      const double d = g.distance(here, path.vertices[k]);
      if (d < best_d)
      {
        best_d = d;
        best = k;
      }
    }
    ref.current_index = best;
    return;
  }

  const double start = path.cum_length[ref.current_index];
  std::size_t best = ref.current_index;
  double best_d = (path.points[best] - p).squaredNorm();
  for (std::size_t k = ref.current_index + 1; k < path.vertices.size(); ++k)
  {
    if (path.cum_length[k] - start > params.localize_window)
      break;
    const double d = (path.points[k] - p).squaredNorm();
    if (d < best_d)
    {
      best_d = d;
      best = k;
    }
  }
  ref.current_index = best;
}

//==============================================================================
Vector2 desired_velocity(const AgentState& state,
  const ReferenceTrajectory& ref, const NavParams& params)
{
  const double v_max = state.limits.v_max;
  const Vector2 p = state.position();
  const SkeletonPath& path = ref.path;
  const std::size_t i = ref.current_index;

  if (path.empty() || i + 1 >= path.points.size())
  {
    const Vector2 to_goal = state.goal - p;
    const double d = to_goal.norm();
    if (d < 1e-12)
      return Vector2::Zero();
    return clamp_norm(Vector2(params.w_follow * v_max / d * to_goal), v_max);
  }

  const Vector2& s_i = path.points[i];
  const Vector2 tangent = (path.points[i + 1] - s_i).normalized();
  const Vector2 v = params.w_follow * v_max * tangent
    - params.w_bias * (p - s_i);
  return clamp_norm(v, v_max);
}

//==============================================================================
namespace {

double avoidance_radius(const AgentState& a, const NavParams& params)
{
  return a.bounding_radius() + params.eps_track;
}

HalfPlane from_line(const Vector2& point, const Vector2& direction)
{
  const Vector2 n(direction.y(), -direction.x());
  return {n, n.dot(point)};
}

HalfPlane reciprocal_plane(const Vector2& rel_pos, const Vector2& v_self,
  const Vector2& v_other, double radius, const NavParams& params)
{
  const Vector2 rel_vel = v_self - v_other;
  const double dist_sq = rel_pos.squaredNorm();
  const double radius_sq = radius * radius;
  const double inv_tau = 1.0 / params.tau_agent;

  Vector2 direction;
  Vector2 u;

  if (dist_sq > radius_sq)
  {
    const Vector2 w = rel_vel - inv_tau * rel_pos;
    const double w_len_sq = w.squaredNorm();
    const double dot1 = w.dot(rel_pos);

    if (dot1 < 0.0 && dot1 * dot1 > radius_sq * w_len_sq && w_len_sq > 1e-24)
    {
      // Closest to the cut-off circle.
      const double w_len = std::sqrt(w_len_sq);
      const Vector2 unit_w = w / w_len;
      direction = Vector2(unit_w.y(), -unit_w.x());
      u = (radius * inv_tau - w_len) * unit_w;
    }
    else
    {
      // Closest to one of the legs.
      const double leg = std::sqrt(dist_sq - radius_sq);
      if (cross<double>(rel_pos, w) > 0.0)
      {
        direction = Vector2(
          rel_pos.x() * leg - rel_pos.y() * radius,
          rel_pos.x() * radius + rel_pos.y() * leg) / dist_sq;
      }
      else
      {
        direction = -Vector2(
          rel_pos.x() * leg + rel_pos.y() * radius,
          -rel_pos.x() * radius + rel_pos.y() * leg) / dist_sq;
      }
      u = rel_vel.dot(direction) * direction - rel_vel;
    }
  }
  else
  {
    // Already overlapping: resolve within one frame.
    const double inv_dt = 1.0 / params.dt;
    Vector2 w = rel_vel - inv_dt * rel_pos;
    double w_len = w.norm();
    if (w_len < 1e-12)
    {
      w = rel_pos.squaredNorm() > 1e-24 ? Vector2(-rel_pos)
        : Vector2(0.0, -1.0);
      w_len = w.norm();
    }
    const Vector2 unit_w = w / w_len;
    direction = Vector2(unit_w.y(), -unit_w.x());
    u = (radius * inv_dt - w_len) * unit_w;
  }

  return from_line(v_self + 0.5 * u, direction);
}

} // anonymous namespace

HalfPlane agent_constraint(const AgentState& self, const AgentState& other,
  const NavParams& params)
{
  return reciprocal_plane(other.position() - self.position(),
    self.finite_difference_velocity(params.dt),
    other.finite_difference_velocity(params.dt),
    avoidance_radius(self, params) + avoidance_radius(other, params), params);
}

//==============================================================================
std::vector<Disc> avoidance_discs(const AgentState& a, const NavParams& params)
{
  std::vector<Disc> out;
  const Footprint fp = footprint(a);
  for (std::size_t k = 0; k < fp.boxes.size(); ++k)
  {
    const auto& box = fp.boxes[k];
    const Vector2 center = k == 0 ? a.position()
      : Vector2(0.25 * (box[0] + box[1] + box[2] + box[3]));
    out.push_back({center, 0.5 * (box[0] - box[2]).norm() + params.eps_track});
  }
  return out;
}

std::vector<HalfPlane> agent_constraints(const AgentState& self,
  const AgentState& other, const NavParams& params)
{
  const Vector2 v_self = self.finite_difference_velocity(params.dt);
  const Vector2 v_other = other.finite_difference_velocity(params.dt);
  const std::vector<Disc> mine = avoidance_discs(self, params);
  const std::vector<Disc> theirs = avoidance_discs(other, params);

  std::vector<HalfPlane> out;
  for (const Disc& a : mine)
  {
    for (const Disc& b : theirs)
    {
      out.push_back(reciprocal_plane(b.center - a.center, v_self, v_other,
        a.radius + b.radius, params));
    }
  }
  return out;
}

//==============================================================================
std::vector<HalfPlane> obstacle_constraints(const AgentState& self,
  const PolyEnvironment& env, const NavParams& params)
{
  const Vector2 p = self.position();
  const double r = avoidance_radius(self, params);

  std::vector<HalfPlane> out;
  const auto nearest = env.nearest_segments(
    p, params.max_obstacle_segments, self.sensing_radius);
  for (const auto& [d, k] : nearest)
  {
    const Segment& s = env.segments()[k];
    const Vector2 q = closest_point_on_segment<double>(p, s.a, s.b);
    if (d < 1e-12)
      continue;
    const Vector2 n = (q - p) / d;
    const double offset = d > r
      ? (d - r) / params.tau_obstacle
      : (d - r) / params.dt;
    out.push_back({n, offset});
  }
  return out;
}

//==============================================================================
ControlInput track_velocity(const AgentState& self, const Vector2& velocity,
  const NavParams& params)
{
  const double offset = params.effective_offset_fraction * self.body.length;
  const Vector2 h = self.heading_vector();
  const Vector2 h_perp = perp<double>(h);

  double v = h.dot(velocity);
  double omega = h_perp.dot(velocity) / offset;
  if (v < 0.0 && velocity.norm() > 1e-9)
  {
    // Target behind the heading: turn toward it at full rate.
    omega = std::copysign(self.limits.omega_max, h_perp.dot(velocity));
    if (self.model == ModelKind::DiffDrive)
      v = 0.0;
  }

  // Acceleration bound on the forward speed.
  const double v_prev = h.dot(self.finite_difference_velocity(params.dt));
  const double dv = self.limits.a_max * params.dt;
  v = std::clamp(v, v_prev - dv, v_prev + dv);

  if (self.model != ModelKind::DiffDrive)
  {
    // Forward only: keep enough speed to turn toward the target.
    v = std::max(v, params.creep_fraction * velocity.norm());
  }

  const ControlInput raw = control_from_twist(self, Twist{v, omega});
  return clamp_control(self, raw).control;
}

//==============================================================================
Vector2 effective_center_velocity(const AgentState& self,
  const ControlInput& u, const NavParams& params)
{
  const double offset = params.effective_offset_fraction * self.body.length;
  const Twist t = twist_of(self, u);
  const Vector2 h = self.heading_vector();
  return t.v * h + t.omega * offset * perp<double>(h);
}

//==============================================================================
GrvoOutput grvo(const Vector2& v_star, const AgentState& self,
  std::span<const AgentState> neighbors, const PolyEnvironment& env,
  const NavParams& params)
{
  std::vector<HalfPlane> constraints = obstacle_constraints(self, env, params);
  const std::size_t hard_count = constraints.size();
  for (const AgentState& other : neighbors)
  {
    if (other.id == self.id)
      continue;
    for (const HalfPlane& h : agent_constraints(self, other, params))
      constraints.push_back(h);
  }

  const Vector2 preferred =
    rotate<double>(v_star, -params.tie_break_rotation);
  const VelocityLpResult lp = solve_velocity_lp(
    constraints, hard_count, self.limits.v_max, preferred);

  return {track_velocity(self, lp.velocity, params), lp.velocity, lp.feasible};
}

} // namespace medax
