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

#include <medax/environment.hpp>
#include <medax/errors.hpp>

#include <limits>
#include <string>

namespace medax {

namespace {

//==============================================================================
void validate_simple(const Polygon<double>& poly, const std::string& what)
{
  if (poly.size() < 3)
    throw LoadError(what + " has fewer than 3 vertices");

  if (std::abs(signed_area<double>(poly)) <= 1e-12)
    throw LoadError(what + " has zero area");

  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
  {
    const Vector2& a = poly[i];
    const Vector2& b = poly[(i + 1) % n];
    if ((b - a).norm() <= 1e-12)
      throw LoadError(what + " has a repeated vertex");

    for (std::size_t j = i + 1; j < n; ++j)
    {
      // Adjacent edges share an endpoint by construction.
      if (j == i + 1 || (i == 0 && j == n - 1))
        continue;

      const Vector2& c = poly[j];
      const Vector2& d = poly[(j + 1) % n];
      if (segments_intersect(a, b, c, d))
        throw LoadError(what + " is self-intersecting");
    }
  }
}

//==============================================================================
bool polygons_cross(const Polygon<double>& p, const Polygon<double>& q)
{
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    for (std::size_t j = 0; j < q.size(); ++j)
    {
      if (segments_intersect(p[i], p[(i + 1) % p.size()], q[j],
        q[(j + 1) % q.size()]))
        return true;
    }
  }
  return false;
}

//==============================================================================
/// Exact 1D squared distance to the nearest finite sample of f (lower
/// envelope of parabolas rooted at each finite sample).
void lower_envelope(const std::vector<double>& f, std::vector<double>& d,
  std::vector<int>& arg, std::vector<int>& v, std::vector<double>& z)
{
  const int n = static_cast<int>(f.size());
  constexpr double inf = std::numeric_limits<double>::infinity();

  int k = -1;
  for (int q = 0; q < n; ++q)
  {
    if (!std::isfinite(f[q]))
      continue;

    if (k < 0)
    {
      k = 0;
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }

    double s = 0.0;
    while (true)
    {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k] && k > 0)
      {
        --k;
        continue;
      }
      break;
    }

    if (s <= z[k])
    {
      // Only happens with k == 0: q dominates everything to the left.
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }

    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }

  if (k < 0)
  {
    std::fill(d.begin(), d.end(), inf);
    std::fill(arg.begin(), arg.end(), -1);
    return;
  }

  int j = 0;
  for (int q = 0; q < n; ++q)
  {
    while (z[j + 1] < q)
      ++j;
    const int p = v[j];
    d[q] = double(q - p) * (q - p) + f[p];
    arg[q] = p;
  }
}

} // anonymous namespace

//==============================================================================
PolyEnvironment::PolyEnvironment(
  Polygon<double> outer, std::vector<Polygon<double>> holes)
: _outer(std::move(outer)),
  _holes(std::move(holes))
{
  validate_simple(_outer, "outer boundary");
  if (signed_area<double>(_outer) < 0.0)
    std::reverse(_outer.begin(), _outer.end());

  for (std::size_t h = 0; h < _holes.size(); ++h)
  {
    auto& hole = _holes[h];
    const std::string name = "hole " + std::to_string(h);
    validate_simple(hole, name);
    if (signed_area<double>(hole) > 0.0)
      std::reverse(hole.begin(), hole.end());

    if (polygons_cross(hole, _outer))
      throw LoadError(name + " touches the outer boundary");
    for (const Vector2& p : hole)
    {
      if (!point_in_polygon<double>(p, _outer))
        throw LoadError(name + " is not inside the outer boundary");
    }

    for (std::size_t g = 0; g < h; ++g)
    {
      const auto& other = _holes[g];
      if (polygons_cross(hole, other)
        || point_in_polygon<double>(hole.front(), other)
        || point_in_polygon<double>(other.front(), hole))
      {
        throw LoadError(name + " overlaps hole " + std::to_string(g));
      }
    }
  }

  for (const Vector2& p : _outer)
    _bounds.extend(p);

  const auto add_edges = [this](const Polygon<double>& poly)
  {
    for (std::size_t i = 0; i < poly.size(); ++i)
      _segments.push_back({poly[i], poly[(i + 1) % poly.size()]});
  };
  add_edges(_outer);
  for (const auto& hole : _holes)
    add_edges(hole);
}

//==============================================================================
bool PolyEnvironment::contains(const Vector2& p) const
{
  if (!point_in_polygon<double>(p, _outer))
    return false;

  for (const auto& hole : _holes)
  {
    if (!point_in_polygon<double>(p, hole))
      continue;

    // On the hole boundary is still freespace.
    for (std::size_t i = 0; i < hole.size(); ++i)
    {
      if (on_segment(p, hole[i], hole[(i + 1) % hole.size()]))
        return true;
    }
    return false;
  }
  return true;
}

//==============================================================================
double PolyEnvironment::distance_to_boundary(const Vector2& p) const
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : _segments)
    best = std::min(best, distance_to_segment(p, s.a, s.b));
  return best;
}

//==============================================================================
std::vector<std::pair<double, std::size_t>> PolyEnvironment::nearest_segments(
  const Vector2& p, std::size_t k, double max_distance) const
{
  std::vector<std::pair<double, std::size_t>> found;
  for (std::size_t i = 0; i < _segments.size(); ++i)
  {
    const double d = distance_to_segment(p, _segments[i].a, _segments[i].b);
    if (d <= max_distance)
      found.emplace_back(d, i);
  }

  std::stable_sort(found.begin(), found.end(),
    [](const auto& l, const auto& r) { return l.first < r.first; });
  if (found.size() > k)
    found.resize(k);
  return found;
}

//==============================================================================
int OccupancyGrid::cell_at(const Vector2& p) const
{
  const Vector2 rel = (p - origin) / cell_size;
  const int col = static_cast<int>(std::floor(rel.x()));
  const int row = static_cast<int>(std::floor(rel.y()));
  if (!in_range(row, col))
    return -1;
  return index(row, col);
}

//==============================================================================
std::size_t OccupancyGrid::free_count() const
{
  return static_cast<std::size_t>(std::count(free.begin(), free.end(), 1));
}

//==============================================================================
double default_cell_size(const PolyEnvironment& env)
{
  return 0.02 * env.bounds().sizes().x();
}

//==============================================================================
DistanceTransform exact_distance_transform(
  const std::vector<std::uint8_t>& is_feature, int rows, int cols)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t total = static_cast<std::size_t>(rows) * cols;

  // Pass 1: per column, 1D distance to the nearest feature row.
  std::vector<double> col_sq(total, inf);
  std::vector<int> col_feature_row(total, -1);
  {
    const int n = rows;
    std::vector<double> f(n), d(n), z(n + 1);
    std::vector<int> arg(n), v(n);
    for (int c = 0; c < cols; ++c)
    {
      for (int r = 0; r < rows; ++r)
        f[r] = is_feature[r * cols + c] ? 0.0 : inf;

      lower_envelope(f, d, arg, v, z);
      for (int r = 0; r < rows; ++r)
      {
        col_sq[r * cols + c] = d[r];
        col_feature_row[r * cols + c] = arg[r];
      }
    }
  }

  // Pass 2: per row, lower envelope over the column distances.
  DistanceTransform out;
  out.squared_distance.assign(total, inf);
  out.nearest.assign(total, -1);
  {
    const int n = cols;
    std::vector<double> f(n), d(n), z(n + 1);
    std::vector<int> arg(n), v(n);
    for (int r = 0; r < rows; ++r)
    {
      for (int c = 0; c < cols; ++c)
        f[c] = col_sq[r * cols + c];

      lower_envelope(f, d, arg, v, z);
      for (int c = 0; c < cols; ++c)
      {
        const int idx = r * cols + c;
        out.squared_distance[idx] = d[c];
        if (arg[c] >= 0)
          out.nearest[idx] = col_feature_row[r * cols + arg[c]] * cols + arg[c];
      }
    }
  }
  return out;
}

//==============================================================================
OccupancyGrid rasterize(const PolyEnvironment& env, double cell_size)
{
  if (!(cell_size > 0.0))
    throw ConstructionError("cell_size must be positive");

  OccupancyGrid grid;
  grid.cell_size = cell_size;
  const Eigen::AlignedBox2d& b = env.bounds();
  grid.origin = b.min() - Vector2::Constant(cell_size);
  grid.cols = static_cast<int>(std::ceil(b.sizes().x() / cell_size)) + 2;
  grid.rows = static_cast<int>(std::ceil(b.sizes().y() / cell_size)) + 2;

  const std::size_t total = static_cast<std::size_t>(grid.rows) * grid.cols;
  grid.free.assign(total, 0);
  std::vector<std::uint8_t> occupied(total, 1);
  for (std::size_t i = 0; i < total; ++i)
  {
    if (env.contains(grid.center(static_cast<int>(i))))
    {
      grid.free[i] = 1;
      occupied[i] = 0;
    }
  }

  if (grid.free_count() == 0)
    throw ConstructionError("environment has no free cells at this resolution");

  const DistanceTransform dt =
    exact_distance_transform(occupied, grid.rows, grid.cols);

  // The boundary lies between a free center and its nearest occupied center;
  // half a cell is subtracted to center the estimate on that crossing.
  grid.clearance.assign(total, 0.0);
  grid.nearest_occupied = dt.nearest;
  for (std::size_t i = 0; i < total; ++i)
  {
    if (grid.free[i])
    {
      grid.clearance[i] =
        cell_size * (std::sqrt(dt.squared_distance[i]) - 0.5);
    }
  }

  return grid;
}

} // namespace medax
