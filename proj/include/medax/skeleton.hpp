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

#ifndef MEDAX__SKELETON_HPP
#define MEDAX__SKELETON_HPP

#include <medax/environment.hpp>

#include <limits>
#include <string>
#include <vector>

namespace medax {

using VertexId = int;
inline constexpr VertexId no_vertex = -1;

//==============================================================================
struct SkeletonOptions
{
  /// Cells with less clearance than this never become vertices.
  double min_clearance = 1.6;

  /// Minimum distance between the nearest boundary features of two adjacent
  /// cells for the medial axis to pass between them. Non-positive selects
  /// max(3 * cell_size, 2 * min_clearance).
  double feature_separation = 0.0;
};

//==============================================================================
/// Discrete medial axis of the freespace G = <V, E> with per-vertex
/// circular-domain radii and all-pairs shortest-path tables.
///
/// Immutable after construction.
class SkeletonGraph
{
public:
  struct Edge
  {
    VertexId to;
    double length;
  };

  SkeletonGraph() = default;

  std::size_t size() const { return _positions.size(); }
  const Vector2& position(VertexId v) const { return _positions[v]; }
  double radius(VertexId v) const { return _radii[v]; }
  const std::vector<Vector2>& positions() const { return _positions; }
  const std::vector<double>& radii() const { return _radii; }
  const std::vector<Edge>& neighbors(VertexId v) const { return _adjacency[v]; }
  int component(VertexId v) const { return _component[v]; }
  int component_count() const { return _component_count; }

  /// Geodesic distance along the graph, +inf across components.
  double distance(VertexId a, VertexId b) const
  {
    return _apsp_dist[static_cast<std::size_t>(a) * size() + b];
  }

  /// First vertex after `a` on the shortest path to `b`; `b` when a == b;
  /// no_vertex across components.
  VertexId next_hop(VertexId a, VertexId b) const
  {
    return _apsp_next[static_cast<std::size_t>(a) * size() + b];
  }

  /// Nearest vertex by Euclidean distance, ties to the lowest index. Does not
  /// check freespace membership.
  VertexId nearest_vertex(const Vector2& p) const;

  /// Grid used to build the graph (for freespace checks in project).
  const OccupancyGrid& grid() const { return _grid; }

  /// Build diagnostics, e.g. a disconnected skeleton on connected freespace.
  const std::vector<std::string>& build_log() const { return _build_log; }

  /// Assemble a graph from explicit vertices and undirected edges. Used by
  /// extract_skeleton and by tests that need hand-made graphs.
  static SkeletonGraph from_parts(OccupancyGrid grid,
    std::vector<Vector2> positions, std::vector<double> radii,
    const std::vector<std::pair<VertexId, VertexId>>& edges);

private:
  friend SkeletonGraph extract_skeleton(
    const OccupancyGrid& grid, const SkeletonOptions& options);

  void build_tables();
  void build_index();

  OccupancyGrid _grid;
  std::vector<Vector2> _positions;
  std::vector<double> _radii;
  std::vector<std::vector<Edge>> _adjacency;
  std::vector<int> _component;
  int _component_count = 0;

  std::vector<double> _apsp_dist;
  std::vector<VertexId> _apsp_next;

  // Uniform bucket index over vertex positions.
  double _bucket_size = 1.0;
  Vector2 _bucket_origin = Vector2::Zero();
  int _bucket_rows = 0;
  int _bucket_cols = 0;
  std::vector<std::vector<VertexId>> _buckets;

  std::vector<std::string> _build_log;
};

//==============================================================================
/// Polyline through adjacent skeleton vertices, parameterized by normalized
/// arc length alpha in [0, 1].
struct SkeletonPath
{
  std::vector<VertexId> vertices;
  std::vector<Vector2> points;
  std::vector<double> radii;

  /// cum_length[k] = arc length from the first vertex to vertices[k].
  std::vector<double> cum_length;

  double length() const { return cum_length.empty() ? 0.0 : cum_length.back(); }
  bool empty() const { return vertices.empty(); }

  SkeletonPath reversed() const;
};

struct PathSample
{
  Vector2 point;
  double radius;

  /// Index of the segment [k, k+1] containing the sample (0 for one-vertex
  /// paths).
  std::size_t segment = 0;

  /// The requested alpha was outside [0, 1] and has been clamped.
  bool clamped = false;
};

//==============================================================================
SkeletonGraph extract_skeleton(
  const OccupancyGrid& grid, const SkeletonOptions& options = {});

/// Nearest skeleton vertex to a freespace point. Throws DomainError when p is
/// outside the rasterized freespace.
VertexId project(const SkeletonGraph& g, const Vector2& p);

/// Shortest path from a to b, reconstructed from the next-hop table. Throws
/// NoPathError when a and b lie in different components.
SkeletonPath shortest_path(const SkeletonGraph& g, VertexId a, VertexId b);

/// Shortest path whose vertex sequence does not depend on argument order:
/// shortest_path_symmetric(a, b) is the reverse of (b, a).
SkeletonPath shortest_path_symmetric(
  const SkeletonGraph& g, VertexId a, VertexId b);

/// Linear interpolation of position and radius at arc-length fraction alpha.
PathSample point_at(const SkeletonPath& path, double alpha);

/// Same, parameterized by absolute arc length from the first vertex.
PathSample point_at_length(const SkeletonPath& path, double s);

} // namespace medax

#endif // MEDAX__SKELETON_HPP
