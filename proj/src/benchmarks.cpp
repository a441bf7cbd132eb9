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

#include <medax/benchmarks.hpp>
#include <medax/errors.hpp>

#include <numbers>
#include <sstream>

namespace medax {

namespace {

constexpr double enlarge_eps = 0.5;

Eigen::AlignedBox2d box(double x0, double y0, double x1, double y1)
{
  return Eigen::AlignedBox2d(Vector2(x0, y0), Vector2(x1, y1));
}

Polygon<double> rect(double x0, double y0, double x1, double y1)
{
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Polygon<double> hexagon(const Vector2& c, double r)
{
  Polygon<double> h;
  for (int k = 0; k < 6; ++k)
  {
    const double a = k * std::numbers::pi / 3.0;
    h.emplace_back(c.x() + r * std::cos(a), c.y() + r * std::sin(a));
  }
  return h;
}

std::vector<SpawnRegion> opposite_ends(
  const Eigen::AlignedBox2d& left, const Eigen::AlignedBox2d& right)
{
  return {{left, right}, {right, left}};
}

Benchmark checked(Benchmark b)
{
  check_width_invariant(b, BodySize{}.bounding_radius(), enlarge_eps);
  return b;
}

/// Closest points between two segments that do not intersect.
std::pair<Vector2, Vector2> closest_pair(const Segment& s, const Segment& t)
{
  const Vector2 c[4][2] = {
    {s.a, closest_point_on_segment<double>(s.a, t.a, t.b)},
    {s.b, closest_point_on_segment<double>(s.b, t.a, t.b)},
    {closest_point_on_segment<double>(t.a, s.a, s.b), t.a},
    {closest_point_on_segment<double>(t.b, s.a, s.b), t.b},
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < 4; ++k)
  {
    if ((c[k][0] - c[k][1]).squaredNorm()
      < (c[best][0] - c[best][1]).squaredNorm())
    {
      best = k;
    }
  }
  return {c[best][0], c[best][1]};
}

bool share_endpoint(const Segment& s, const Segment& t)
{
  return s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
}

} // anonymous namespace

//==============================================================================
Benchmark dumbbell_benchmark()
{
  Benchmark b{"dumbbell", "I",
    PolyEnvironment({{0, 5}, {70, 5}, {70, 45.5}, {130, 45.5}, {130, 5},
      {200, 5}, {200, 95}, {130, 95}, {130, 54.5}, {70, 54.5}, {70, 95},
      {0, 95}}),
    1.0, opposite_ends(box(10, 25, 55, 75), box(145, 25, 190, 75)), 4};
  return checked(std::move(b));
}

//==============================================================================
Benchmark bee_benchmark()
{
  const double r = 9.0;
  const double pitch = 30.0;
  const double column = pitch * std::sqrt(3.0) / 2.0;

  std::vector<Polygon<double>> holes;
  for (int k = 0; k < 4; ++k)
  {
    const double x = 100.0 + (k - 1.5) * column;
    if (k % 2 == 0)
    {
      for (double y : {20.0, 50.0, 80.0})
        holes.push_back(hexagon({x, y}, r));
    }
    else
    {
      for (double y : {35.0, 65.0})
        holes.push_back(hexagon({x, y}, r));
    }
  }

  Benchmark b{"bee", "II", PolyEnvironment(rect(0, 0, 200, 100), holes), 1.0,
    opposite_ends(box(5, 10, 45, 90), box(155, 10, 195, 90)), 15};
  return checked(std::move(b));
}

//==============================================================================
Benchmark maze_benchmark()
{
  Benchmark b{"maze", "III",
    PolyEnvironment(rect(0, 0, 200, 100),
      {rect(50, 14, 150, 43), rect(50, 57, 150, 86)}),
    1.0, opposite_ends(box(5, 10, 45, 90), box(155, 10, 195, 90)), 6};
  return checked(std::move(b));
}

//==============================================================================
Benchmark garage_benchmark()
{
  Benchmark b{"garage", "IV",
    PolyEnvironment({{0, 45.5}, {200, 45.5}, {200, 54.5}, {72, 54.5},
      {72, 100}, {20, 100}, {20, 54.5}, {0, 54.5}}),
    1.0, opposite_ends(box(5, 49.5, 20, 50.5), box(180, 49.5, 195, 50.5)), 2};
  return checked(std::move(b));
}

//==============================================================================
Benchmark u_benchmark()
{
  return {"u", "",
    PolyEnvironment({{0, 0}, {100, 0}, {100, 100}, {80, 100}, {80, 40},
      {20, 40}, {20, 100}, {0, 100}}),
    1.0, {}, 1};
}

//==============================================================================
Benchmark open_benchmark()
{
  return {"open", "", PolyEnvironment(rect(0, 0, 200, 200)), 2.0,
    opposite_ends(box(20, 20, 60, 180), box(140, 20, 180, 180)), 2};
}

//==============================================================================
Benchmark corridor_benchmark(double length, double width)
{
  const double mid = 0.5 * width;
  return {"corridor", "", PolyEnvironment(rect(0, 0, length, width)), 0.5,
    opposite_ends(box(4, mid - 0.1, 8, mid + 0.1),
      box(length - 8, mid - 0.1, length - 4, mid + 0.1)), 1};
}

//==============================================================================
std::vector<Benchmark> benchmark_suite()
{
  std::vector<Benchmark> suite;
  suite.push_back(dumbbell_benchmark());
  suite.push_back(bee_benchmark());
  suite.push_back(maze_benchmark());
  suite.push_back(garage_benchmark());
  return suite;
}

//==============================================================================
Benchmark benchmark_by_name(const std::string& key)
{
  if (key == "I" || key == "dumbbell")
    return dumbbell_benchmark();
  if (key == "II" || key == "bee")
    return bee_benchmark();
  if (key == "III" || key == "maze")
    return maze_benchmark();
  if (key == "IV" || key == "garage")
    return garage_benchmark();
  if (key == "u")
    return u_benchmark();
  if (key == "open")
    return open_benchmark();
  if (key == "corridor")
    return corridor_benchmark();
  throw LoadError("unknown benchmark '" + key + "'");
}

//==============================================================================
WidthMeasure measure_widths(const PolyEnvironment& env, double sample)
{
  const auto& segs = env.segments();
  double corridor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segs.size(); ++i)
  {
    for (std::size_t j = i + 1; j < segs.size(); ++j)
    {
      if (share_endpoint(segs[i], segs[j]))
        continue;
      const auto [p, q] = closest_pair(segs[i], segs[j]);
      const double d = (p - q).norm();
      if (d >= corridor || d < 1e-12)
        continue;
      const Vector2 mid = 0.5 * (p + q);
      if (env.contains(mid) && env.distance_to_boundary(mid) > 0.25 * d)
        corridor = d;
    }
  }

  double clearance = 0.0;
  const auto& bounds = env.bounds();
  for (double y = bounds.min().y() + 0.5 * sample; y < bounds.max().y();
    y += sample)
  {
    for (double x = bounds.min().x() + 0.5 * sample; x < bounds.max().x();
      x += sample)
    {
      const Vector2 p(x, y);
      if (env.contains(p))
        clearance = std::max(clearance, env.distance_to_boundary(p));
    }
  }
  return {corridor, 2.0 * clearance};
}

//==============================================================================
void check_width_invariant(const Benchmark& b, double r_agent, double eps)
{
  const double d = 2.0 * (r_agent + eps);
  const WidthMeasure m = measure_widths(b.env);
  if (!(d < m.corridor_width && m.corridor_width < 2.0 * d
    && 2.0 * d < m.chamber_diameter))
  {
    std::ostringstream msg;
    msg << "map '" << b.name << "' violates the width invariant: corridor "
        << m.corridor_width << ", chamber " << m.chamber_diameter
        << ", enlarged diameter " << d;
    throw ConstructionError(msg.str());
  }
}

} // namespace medax
