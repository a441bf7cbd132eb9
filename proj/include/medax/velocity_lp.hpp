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

#ifndef MEDAX__VELOCITY_LP_HPP
#define MEDAX__VELOCITY_LP_HPP

#include <medax/geometry.hpp>

#include <span>

namespace medax {

//==============================================================================
/// Feasible velocities satisfy normal.dot(v) <= offset, |normal| = 1.
struct HalfPlane
{
  Vector2 normal;
  double offset;

  static HalfPlane from_normal(const Vector2& n, double offset)
  {
    const double len = n.norm();
    return {n / len, offset / len};
  }

  double violation(const Vector2& v) const { return normal.dot(v) - offset; }
};

struct VelocityLpResult
{
  Vector2 velocity;

  /// All constraints were satisfiable inside the speed disk. When false the
  /// velocity minimizes the largest violation of the soft constraints while
  /// keeping the first `hard_count` ones.
  bool feasible;
};

/// Velocity inside the disk |v| <= max_speed closest to `preferred` satisfying
/// every half-plane (randomization-free incremental 2D LP). When that is
/// infeasible the constraints after the first `hard_count` are relaxed to
/// minimize their largest violation.
VelocityLpResult solve_velocity_lp(std::span<const HalfPlane> constraints,
  std::size_t hard_count, double max_speed, const Vector2& preferred);

} // namespace medax

#endif // MEDAX__VELOCITY_LP_HPP
