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

#include <medax/skeleton.hpp>
#include <medax/errors.hpp>

#include <cmath>
#include <deque>
#include <functional>
#include <queue>

namespace medax {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

constexpr int d8_row[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int d8_col[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

//==============================================================================
int count_free_components(const OccupancyGrid& grid)
{
  std::vector<int> label(grid.free.size(), -1);
  int count = 0;
  for (int start = 0; start < static_cast<int>(grid.free.size()); ++start)
  {
    if (!grid.free[start] || label[start] >= 0)
      continue;

    std::deque<int> queue{start};
    label[start] = count;
    while (!queue.empty())
    {
      const int idx = queue.front();
      queue.pop_front();
      const int r = grid.row_of(idx);
      const int c = grid.col_of(idx);
      constexpr int dr[4] = {-1, 1, 0, 0};
      constexpr int dc[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k)
      {
        if (!grid.in_range(r + dr[k], c + dc[k]))
          continue;
        const int n = grid.index(r + dr[k], c + dc[k]);
        if (grid.free[n] && label[n] < 0)
        {
          label[n] = count;
          queue.push_back(n);
        }
      }
    }
    ++count;
  }
  return count;
}

} // anonymous namespace

//==============================================================================
SkeletonGraph SkeletonGraph::from_parts(OccupancyGrid grid,
  std::vector<Vector2> positions, std::vector<double> radii,
  const std::vector<std::pair<VertexId, VertexId>>& edges)
{
  SkeletonGraph g;
  g._grid = std::move(grid);
  g._positions = std::move(positions);
  g._radii = std::move(radii);
  g._adjacency.resize(g._positions.size());
  for (const auto& [a, b] : edges)
  {
    // Multiples of 2^-32: path sums below 2^21 are exact in any order.
    const double len = std::ldexp(
      std::round(std::ldexp((g._positions[a] - g._positions[b]).norm(), 32)),
      -32);
    g._adjacency[a].push_back({b, len});
    g._adjacency[b].push_back({a, len});
  }
  for (auto& adj : g._adjacency)
  {
    std::sort(adj.begin(), adj.end(),
      [](const Edge& l, const Edge& r) { return l.to < r.to; });
  }

  g.build_tables();
  g.build_index();
  return g;
}

//==============================================================================
void SkeletonGraph::build_tables()
{
  const std::size_t n = size();

  _component.assign(n, -1);
  _component_count = 0;
  for (std::size_t s = 0; s < n; ++s)
  {
    if (_component[s] >= 0)
      continue;
    std::deque<VertexId> queue{static_cast<VertexId>(s)};
    _component[s] = _component_count;
    while (!queue.empty())
    {
      const VertexId u = queue.front();
      queue.pop_front();
      for (const Edge& e : _adjacency[u])
      {
        if (_component[e.to] < 0)
        {
          _component[e.to] = _component_count;
          queue.push_back(e.to);
        }
      }
    }
    ++_component_count;
  }

  _apsp_dist.assign(n * n, inf);
  _apsp_next.assign(n * n, no_vertex);

  using Item = std::pair<double, VertexId>;
  std::vector<char> settled(n);
  std::vector<VertexId> first(n);
  std::vector<VertexId> pred(n);
  for (std::size_t s = 0; s < n; ++s)
  {
    double* dist = &_apsp_dist[s * n];
    VertexId* next = &_apsp_next[s * n];
    std::fill(settled.begin(), settled.end(), 0);
    std::fill(pred.begin(), pred.end(), no_vertex);

    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[s] = 0.0;
    heap.emplace(0.0, static_cast<VertexId>(s));
    while (!heap.empty())
    {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled[u])
        continue;
      settled[u] = 1;

      if (u == static_cast<VertexId>(s))
        first[u] = u;
      else
        first[u] = pred[u] == static_cast<VertexId>(s) ? u : first[pred[u]];
      next[u] = first[u];

      for (const Edge& e : _adjacency[u])
      {
        const double nd = d + e.length;
        if (nd < dist[e.to])
        {
          dist[e.to] = nd;
          pred[e.to] = u;
          heap.emplace(nd, e.to);
        }
      }
    }
  }
}

//==============================================================================
void SkeletonGraph::build_index()
{
  _buckets.clear();
  if (_positions.empty())
    return;

  Eigen::AlignedBox2d box;
  for (const Vector2& p : _positions)
    box.extend(p);

  _bucket_size = std::max(4.0 * _grid.cell_size, 1e-6);
  _bucket_origin = box.min();
  _bucket_cols = static_cast<int>(box.sizes().x() / _bucket_size) + 1;
  _bucket_rows = static_cast<int>(box.sizes().y() / _bucket_size) + 1;
  _buckets.assign(static_cast<std::size_t>(_bucket_rows) * _bucket_cols, {});
  for (std::size_t v = 0; v < _positions.size(); ++v)
  {
    const Vector2 rel = (_positions[v] - _bucket_origin) / _bucket_size;
    const int c = std::clamp(static_cast<int>(rel.x()), 0, _bucket_cols - 1);
    const int r = std::clamp(static_cast<int>(rel.y()), 0, _bucket_rows - 1);
    _buckets[r * _bucket_cols + c].push_back(static_cast<VertexId>(v));
  }
}

//==============================================================================
VertexId SkeletonGraph::nearest_vertex(const Vector2& p) const
{
  if (_positions.empty())
    return no_vertex;

  const Vector2 rel = (p - _bucket_origin) / _bucket_size;
  const int c0 = std::clamp(
    static_cast<int>(std::floor(rel.x())), 0, _bucket_cols - 1);
  const int r0 = std::clamp(
    static_cast<int>(std::floor(rel.y())), 0, _bucket_rows - 1);

  VertexId best = no_vertex;
  double best_sq = inf;
  const auto consider = [&](int r, int c)
  {
    for (const VertexId v : _buckets[r * _bucket_cols + c])
    {
      const double d = (_positions[v] - p).squaredNorm();
      if (d < best_sq || (d == best_sq && v < best))
      {
        best_sq = d;
        best = v;
      }
    }
  };

  const int max_ring = std::max(_bucket_rows, _bucket_cols);
  for (int k = 0; k <= max_ring; ++k)
  {
    for (int r = r0 - k; r <= r0 + k; ++r)
    {
      if (r < 0 || r >= _bucket_rows)
        continue;
      const bool edge_row = (r == r0 - k || r == r0 + k);
      for (int c = c0 - k; c <= c0 + k; ++c)
      {
        if (c < 0 || c >= _bucket_cols)
          continue;
        if (!edge_row && c != c0 - k && c != c0 + k)
          continue;
        consider(r, c);
      }
    }

    // Unvisited buckets are at least k bucket widths away.
    const double bound = k * _bucket_size;
    if (best != no_vertex && best_sq < bound * bound)
      break;
  }
  return best;
}

//==============================================================================
SkeletonGraph extract_skeleton(
  const OccupancyGrid& grid, const SkeletonOptions& options)
{
  if (grid.free_count() == 0)
    throw ConstructionError("cannot extract a skeleton from empty freespace");

  const double h = grid.cell_size;
  const double separation = options.feature_separation > 0.0
    ? options.feature_separation
    : std::max(3.0 * h, 2.0 * options.min_clearance);
  const double separation_sq = separation * separation;

  const std::size_t total = grid.free.size();
  std::vector<char> ridge(total, 0);

  constexpr int d4_row[2] = {0, 1};
  constexpr int d4_col[2] = {1, 0};
  for (int r = 0; r < grid.rows; ++r)
  {
    for (int c = 0; c < grid.cols; ++c)
    {
      const int p = grid.index(r, c);
      if (!grid.free[p])
        continue;

      for (int k = 0; k < 2; ++k)
      {
        if (!grid.in_range(r + d4_row[k], c + d4_col[k]))
          continue;
        const int q = grid.index(r + d4_row[k], c + d4_col[k]);
        if (!grid.free[q])
          continue;

        const Vector2 fp = grid.center(grid.nearest_occupied[p]);
        const Vector2 fq = grid.center(grid.nearest_occupied[q]);
        if ((fp - fq).squaredNorm() < separation_sq)
          continue;

        // The axis passes between p and q; keep the side farther from the
        // boundary, both on a plateau.
        if (grid.clearance[p] >= grid.clearance[q])
          ridge[p] = 1;
        if (grid.clearance[q] >= grid.clearance[p])
          ridge[q] = 1;
      }
    }
  }

  for (std::size_t i = 0; i < total; ++i)
  {
    if (ridge[i] && grid.clearance[i] < options.min_clearance)
      ridge[i] = 0;
  }

  // Drop isolated ridge cells.
  const auto has_ridge_neighbor = [&](int idx)
  {
    const int r = grid.row_of(idx);
    const int c = grid.col_of(idx);
    for (int k = 0; k < 8; ++k)
    {
      if (grid.in_range(r + d8_row[k], c + d8_col[k])
        && ridge[grid.index(r + d8_row[k], c + d8_col[k])])
        return true;
    }
    return false;
  };

  std::vector<int> vertex_of(total, no_vertex);
  std::vector<Vector2> positions;
  std::vector<double> radii;
  for (std::size_t i = 0; i < total; ++i)
  {
    if (!ridge[i] || !has_ridge_neighbor(static_cast<int>(i)))
      continue;
    vertex_of[i] = static_cast<int>(positions.size());
    positions.push_back(grid.center(static_cast<int>(i)));
    radii.push_back(grid.clearance[i]);
  }

  if (positions.empty())
    throw ConstructionError("no skeleton vertices above the clearance floor");

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < total; ++i)
  {
    if (vertex_of[i] == no_vertex)
      continue;
    const int r = grid.row_of(static_cast<int>(i));
    const int c = grid.col_of(static_cast<int>(i));
    // Forward half of the 8-neighborhood so each edge is added once.
    for (int k = 4; k < 8; ++k)
    {
      if (!grid.in_range(r + d8_row[k], c + d8_col[k]))
        continue;
      const int j = grid.index(r + d8_row[k], c + d8_col[k]);
      if (vertex_of[j] != no_vertex)
        edges.emplace_back(vertex_of[i], vertex_of[j]);
    }
  }

  SkeletonGraph g = SkeletonGraph::from_parts(
    grid, std::move(positions), std::move(radii), edges);

  const int free_components = count_free_components(grid);
  if (g.component_count() > free_components)
  {
    g._build_log.push_back("warning: skeleton has "
      + std::to_string(g.component_count()) + " components on "
      + std::to_string(free_components) + " freespace components");
  }
  return g;
}

//==============================================================================
VertexId project(const SkeletonGraph& g, const Vector2& p)
{
  const OccupancyGrid& grid = g.grid();
  const int cell = grid.cell_at(p);
  if (cell < 0 || !grid.free[cell])
    throw DomainError("projected point is outside the freespace");
  return g.nearest_vertex(p);
}

//==============================================================================
SkeletonPath shortest_path(const SkeletonGraph& g, VertexId a, VertexId b)
{
  if (a < 0 || b < 0 || a >= static_cast<VertexId>(g.size())
    || b >= static_cast<VertexId>(g.size()))
    throw DomainError("vertex index out of range");

  if (g.component(a) != g.component(b))
    throw NoPathError("vertices lie in different skeleton components");

  SkeletonPath path;
  VertexId v = a;
  path.vertices.push_back(v);
  path.points.push_back(g.position(v));
  path.radii.push_back(g.radius(v));
  path.cum_length.push_back(0.0);
  while (v != b)
  {
    const VertexId n = g.next_hop(v, b);
    path.cum_length.push_back(
      path.cum_length.back() + (g.position(n) - g.position(v)).norm());
    v = n;
    path.vertices.push_back(v);
    path.points.push_back(g.position(v));
    path.radii.push_back(g.radius(v));
  }
  return path;
}

//==============================================================================
SkeletonPath shortest_path_symmetric(
  const SkeletonGraph& g, VertexId a, VertexId b)
{
  if (a <= b)
    return shortest_path(g, a, b);
  return shortest_path(g, b, a).reversed();
}

//==============================================================================
SkeletonPath SkeletonPath::reversed() const
{
  SkeletonPath out;
  out.vertices.assign(vertices.rbegin(), vertices.rend());
  out.points.assign(points.rbegin(), points.rend());
  out.radii.assign(radii.rbegin(), radii.rend());
  const double total = length();
  out.cum_length.resize(cum_length.size());
  for (std::size_t k = 0; k < cum_length.size(); ++k)
    out.cum_length[k] = total - cum_length[cum_length.size() - 1 - k];
  return out;
}

//==============================================================================
PathSample point_at_length(const SkeletonPath& path, double s)
{
  PathSample out{path.points.front(), path.radii.front()};
  const double total = path.length();
  if (s < 0.0 || s > total)
  {
    out.clamped = true;
    s = std::clamp(s, 0.0, total);
  }

  if (path.vertices.size() == 1)
    return out;

  auto it = std::upper_bound(path.cum_length.begin(), path.cum_length.end(), s);
  std::size_t k = static_cast<std::size_t>(it - path.cum_length.begin());
  k = std::clamp<std::size_t>(k, 1, path.cum_length.size() - 1) - 1;

  const double seg = path.cum_length[k + 1] - path.cum_length[k];
  const double t = seg > 0.0 ? (s - path.cum_length[k]) / seg : 0.0;
  out.point = path.points[k] + t * (path.points[k + 1] - path.points[k]);
  out.radius = path.radii[k] + t * (path.radii[k + 1] - path.radii[k]);
  out.segment = k;
  return out;
}

//==============================================================================
PathSample point_at(const SkeletonPath& path, double alpha)
{
  const bool clamped = alpha < 0.0 || alpha > 1.0;
  alpha = std::clamp(alpha, 0.0, 1.0);
  PathSample out = point_at_length(path, alpha * path.length());
  out.clamped = out.clamped || clamped;
  return out;
}

} // namespace medax
