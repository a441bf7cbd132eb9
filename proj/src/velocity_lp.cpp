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

#include <medax/velocity_lp.hpp>

#include <vector>

namespace medax {

namespace {

constexpr double parallel_eps = 1e-9;

/// Directed line; the feasible side is to the left of `direction`.
struct Line
{
  Vector2 point;
  Vector2 direction;
};

Line to_line(const HalfPlane& h)
{
  return {h.normal * h.offset, Vector2(-h.normal.y(), h.normal.x())};
}

double det(const Vector2& a, const Vector2& b)
{
  return cross<double>(a, b);
}

//==============================================================================
/// Optimum on line `k` subject to lines [0, k) and the speed disk.
bool solve_on_line(const std::vector<Line>& lines, std::size_t k,
  double radius, const Vector2& opt, bool direction_opt, Vector2& result)
{
  const Line& line = lines[k];
  const double dot = line.point.dot(line.direction);
  const double disc = dot * dot + radius * radius - line.point.squaredNorm();
  if (disc < 0.0)
    return false;

  const double sqrt_disc = std::sqrt(disc);
  double t_left = -dot - sqrt_disc;
  double t_right = -dot + sqrt_disc;

  for (std::size_t i = 0; i < k; ++i)
  {
    const double denom = det(line.direction, lines[i].direction);
    const double numer = det(lines[i].direction, line.point - lines[i].point);

    if (std::abs(denom) <= parallel_eps)
    {
      if (numer < 0.0)
        return false;
      continue;
    }

    const double t = numer / denom;
    if (denom >= 0.0)
      t_right = std::min(t_right, t);
    else
      t_left = std::max(t_left, t);

    if (t_left > t_right)
      return false;
  }

  if (direction_opt)
  {
    result = opt.dot(line.direction) > 0.0
      ? Vector2(line.point + t_right * line.direction)
      : Vector2(line.point + t_left * line.direction);
  }
  else
  {
    const double t = std::clamp(
      line.direction.dot(opt - line.point), t_left, t_right);
    result = line.point + t * line.direction;
  }
  return true;
}

//==============================================================================
/// Returns the index of the first line that could not be satisfied, or
/// lines.size() on success.
std::size_t solve_incremental(const std::vector<Line>& lines, double radius,
  const Vector2& opt, bool direction_opt, Vector2& result)
{
  if (direction_opt)
    result = opt * radius;
  else
    result = clamp_norm(opt, radius);

  for (std::size_t i = 0; i < lines.size(); ++i)
  {
    if (det(lines[i].direction, lines[i].point - result) > 0.0)
    {
      const Vector2 previous = result;
      if (!solve_on_line(lines, i, radius, opt, direction_opt, result))
      {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

//==============================================================================
/// Minimizes the maximum violation of lines [begin, end) while keeping lines
/// [0, hard_count) satisfied.
void solve_least_violation(const std::vector<Line>& lines,
  std::size_t hard_count, std::size_t begin, double radius, Vector2& result)
{
  double distance = 0.0;
  for (std::size_t i = begin; i < lines.size(); ++i)
  {
    if (det(lines[i].direction, lines[i].point - result) <= distance)
      continue;

    std::vector<Line> projected(lines.begin(),
      lines.begin() + static_cast<std::ptrdiff_t>(hard_count));
    for (std::size_t j = hard_count; j < i; ++j)
    {
      Line l;
      const double d = det(lines[i].direction, lines[j].direction);
      if (std::abs(d) <= parallel_eps)
      {
        if (lines[i].direction.dot(lines[j].direction) > 0.0)
          continue;
        l.point = 0.5 * (lines[i].point + lines[j].point);
      }
      else
      {
        l.point = lines[i].point
          + (det(lines[j].direction, lines[i].point - lines[j].point) / d)
            * lines[i].direction;
      }
      l.direction = (lines[j].direction - lines[i].direction).normalized();
      projected.push_back(l);
    }

    const Vector2 previous = result;
    const Vector2 away(-lines[i].direction.y(), lines[i].direction.x());
    if (solve_incremental(projected, radius, away, true, result)
      < projected.size())
    {
      // Only from round-off; the previous result is already feasible for
      // this sub-problem.
      result = previous;
    }
    distance = det(lines[i].direction, lines[i].point - result);
  }
}

} // anonymous namespace

//==============================================================================
VelocityLpResult solve_velocity_lp(std::span<const HalfPlane> constraints,
  std::size_t hard_count, double max_speed, const Vector2& preferred)
{
  std::vector<Line> lines;
  lines.reserve(constraints.size());
  for (const HalfPlane& h : constraints)
    lines.push_back(to_line(h));

  hard_count = std::min(hard_count, lines.size());

  Vector2 result = Vector2::Zero();
  const std::size_t fail =
    solve_incremental(lines, max_speed, preferred, false, result);
  if (fail == lines.size())
    return {result, true};

  if (fail < hard_count)
  {
    // Hard constraints alone are inconsistent; relax everything.
    result = Vector2::Zero();
    solve_least_violation(lines, 0, 0, max_speed, result);
    return {result, false};
  }

  solve_least_violation(lines, hard_count, fail, max_speed, result);
  return {result, false};
}

} // namespace medax
