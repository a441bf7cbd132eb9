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

#ifndef MEDAX__GEOMETRY_HPP
#define MEDAX__GEOMETRY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace medax {

template<typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Vector2 = Vec2<double>;

template<typename Scalar>
using Polygon = std::vector<Vec2<Scalar>>;

//==============================================================================
template<typename Scalar>
Scalar cross(const Vec2<Scalar>& a, const Vec2<Scalar>& b)
{
  return a.x() * b.y() - a.y() * b.x();
}

//==============================================================================
/// Counter-clockwise perpendicular.
template<typename Scalar>
Vec2<Scalar> perp(const Vec2<Scalar>& a)
{
  return Vec2<Scalar>(-a.y(), a.x());
}

//==============================================================================
template<typename Scalar>
Vec2<Scalar> rotate(const Vec2<Scalar>& a, Scalar angle)
{
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  return Vec2<Scalar>(c * a.x() - s * a.y(), s * a.x() + c * a.y());
}

//==============================================================================
/// Wraps an angle into (-pi, pi].
template<typename Scalar>
Scalar wrap_angle(Scalar angle)
{
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  angle = std::fmod(angle, two_pi);
  if (angle <= -std::numbers::pi_v<Scalar>)
    angle += two_pi;
  else if (angle > std::numbers::pi_v<Scalar>)
    angle -= two_pi;
  return angle;
}

//==============================================================================
/// Scales `v` down so that its norm does not exceed `max_norm`.
template<typename Derived>
auto clamp_norm(const Eigen::MatrixBase<Derived>& v,
  typename Derived::Scalar max_norm)
{
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, 1> out = v;
  const Scalar n = out.norm();
  if (n > max_norm && n > Scalar(0))
    out *= max_norm / n;
  return out;
}

//==============================================================================
template<typename Scalar>
Scalar signed_area(std::span<const Vec2<Scalar>> poly)
{
  Scalar a = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    a += cross(poly[i], poly[(i + 1) % n]);
  return a / Scalar(2);
}

//==============================================================================
template<typename Scalar>
Vec2<Scalar> closest_point_on_segment(
  const Vec2<Scalar>& p, const Vec2<Scalar>& a, const Vec2<Scalar>& b)
{
  const Vec2<Scalar> ab = b - a;
  const Scalar len_sq = ab.squaredNorm();
  if (len_sq <= Scalar(0))
    return a;
  const Scalar t = std::clamp((p - a).dot(ab) / len_sq, Scalar(0), Scalar(1));
  return a + t * ab;
}

//==============================================================================
template<typename Scalar>
Scalar distance_to_segment(
  const Vec2<Scalar>& p, const Vec2<Scalar>& a, const Vec2<Scalar>& b)
{
  return (p - closest_point_on_segment(p, a, b)).norm();
}

//==============================================================================
/// True when p lies on segment [a, b] within `tol`.
template<typename Scalar>
bool on_segment(const Vec2<Scalar>& p, const Vec2<Scalar>& a,
  const Vec2<Scalar>& b, Scalar tol = Scalar(1e-12))
{
  return distance_to_segment(p, a, b) <= tol;
}

//==============================================================================
/// Even-odd crossing test. Points on the boundary count as inside.
template<typename Scalar>
bool point_in_polygon(const Vec2<Scalar>& p, std::span<const Vec2<Scalar>> poly)
{
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
  {
    const Vec2<Scalar>& a = poly[i];
    const Vec2<Scalar>& b = poly[j];
    if (on_segment(p, a, b))
      return true;

    if ((a.y() > p.y()) != (b.y() > p.y()))
    {
      const Scalar x_cross =
        a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross)
        inside = !inside;
    }
  }
  return inside;
}

//==============================================================================
/// Proper or touching intersection of segments [a, b] and [c, d].
template<typename Scalar>
bool segments_intersect(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
  const Vec2<Scalar>& c, const Vec2<Scalar>& d)
{
  const Scalar d1 = cross<Scalar>(d - c, a - c);
  const Scalar d2 = cross<Scalar>(d - c, b - c);
  const Scalar d3 = cross<Scalar>(b - a, c - a);
  const Scalar d4 = cross<Scalar>(b - a, d - a);

  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))
    && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;

  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d))
    || (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

//==============================================================================
/// Rectangle given by its four corners in counter-clockwise order.
template<typename Scalar>
using OrientedBox = std::array<Vec2<Scalar>, 4>;

template<typename Scalar>
OrientedBox<Scalar> make_box(const Vec2<Scalar>& center, Scalar heading,
  Scalar length, Scalar width)
{
  const Vec2<Scalar> ax(std::cos(heading), std::sin(heading));
  const Vec2<Scalar> ay = perp(ax);
  const Vec2<Scalar> hx = ax * (length / Scalar(2));
  const Vec2<Scalar> hy = ay * (width / Scalar(2));
  return {center + hx + hy, center - hx + hy, center - hx - hy,
    center + hx - hy};
}

//==============================================================================
/// Separating-axis test between two rectangles. Touching counts as overlap.
template<typename Scalar>
bool boxes_overlap(const OrientedBox<Scalar>& a, const OrientedBox<Scalar>& b)
{
  const auto separated_along = [](const Vec2<Scalar>& axis,
    const OrientedBox<Scalar>& p, const OrientedBox<Scalar>& q)
  {
    Scalar pmin = axis.dot(p[0]), pmax = pmin;
    Scalar qmin = axis.dot(q[0]), qmax = qmin;
    for (std::size_t k = 1; k < 4; ++k)
    {
      pmin = std::min(pmin, axis.dot(p[k]));
      pmax = std::max(pmax, axis.dot(p[k]));
      qmin = std::min(qmin, axis.dot(q[k]));
      qmax = std::max(qmax, axis.dot(q[k]));
    }
    return pmax < qmin || qmax < pmin;
  };

  for (const OrientedBox<Scalar>* box : {&a, &b})
  {
    for (std::size_t k = 0; k < 2; ++k)
    {
      const Vec2<Scalar> edge = (*box)[k + 1] - (*box)[k];
      if (separated_along(perp(edge), a, b))
        return false;
    }
  }
  return true;
}

//==============================================================================
template<typename Scalar>
bool point_in_box(const Vec2<Scalar>& p, const OrientedBox<Scalar>& box)
{
  for (std::size_t k = 0; k < 4; ++k)
  {
    if (cross<Scalar>(box[(k + 1) % 4] - box[k], p - box[k]) < Scalar(0))
      return false;
  }
  return true;
}

} // namespace medax

#endif // MEDAX__GEOMETRY_HPP
