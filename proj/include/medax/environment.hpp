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

#ifndef MEDAX__ENVIRONMENT_HPP
#define MEDAX__ENVIRONMENT_HPP

#include <medax/geometry.hpp>

#include <Eigen/Geometry>

#include <cstdint>
#include <utility>
#include <vector>

namespace medax {

//==============================================================================
struct Segment
{
  Vector2 a;
  Vector2 b;
};

//==============================================================================
/// Polygonal freespace: an outer boundary with polygonal holes.
///
/// The constructor validates simplicity, containment, and disjointness of the
/// holes, then reorients the outer boundary counter-clockwise and every hole
/// clockwise. Invalid input throws LoadError.
class PolyEnvironment
{
public:
  PolyEnvironment(Polygon<double> outer, std::vector<Polygon<double>> holes = {});

  const Polygon<double>& outer() const { return _outer; }
  const std::vector<Polygon<double>>& holes() const { return _holes; }
  const Eigen::AlignedBox2d& bounds() const { return _bounds; }

  /// Every boundary edge of the outer polygon and the holes.
  const std::vector<Segment>& segments() const { return _segments; }

  /// Inside the outer boundary and outside every hole. Boundary points count
  /// as inside the freespace.
  bool contains(const Vector2& p) const;

  /// Exact Euclidean distance from p to the nearest boundary edge.
  double distance_to_boundary(const Vector2& p) const;

  /// Up to `k` boundary segments whose distance to `p` is at most
  /// `max_distance`, nearest first. Ties keep segment order.
  std::vector<std::pair<double, std::size_t>> nearest_segments(
    const Vector2& p, std::size_t k, double max_distance) const;

private:
  Polygon<double> _outer;
  std::vector<Polygon<double>> _holes;
  Eigen::AlignedBox2d _bounds;
  std::vector<Segment> _segments;
};

//==============================================================================
/// Rasterized freespace with a clearance field.
///
/// Cell (row, col) covers [origin + col*h, origin + (col+1)*h] along x and
/// the analogous range along y. The raster carries a one-cell occupied border
/// around the environment bounds.
struct OccupancyGrid
{
  double cell_size = 1.0;
  Vector2 origin = Vector2::Zero();
  int rows = 0;
  int cols = 0;

  /// Row-major: index = row * cols + col.
  std::vector<std::uint8_t> free;

  /// Distance to the freespace boundary in world units, 0 for occupied cells.
  std::vector<double> clearance;

  /// Index of the nearest occupied cell (feature transform), self for
  /// occupied cells.
  std::vector<int> nearest_occupied;

  int index(int row, int col) const { return row * cols + col; }
  int row_of(int idx) const { return idx / cols; }
  int col_of(int idx) const { return idx % cols; }
  bool in_range(int row, int col) const
  {
    return row >= 0 && row < rows && col >= 0 && col < cols;
  }

  Vector2 center(int idx) const
  {
    return origin + cell_size * Vector2(col_of(idx) + 0.5, row_of(idx) + 0.5);
  }

  /// Cell containing p, or -1 when p is outside the raster.
  int cell_at(const Vector2& p) const;

  std::size_t free_count() const;
};

/// Default raster resolution for an environment: 2% of its width.
double default_cell_size(const PolyEnvironment& env);

OccupancyGrid rasterize(const PolyEnvironment& env, double cell_size);

//==============================================================================
/// Exact squared Euclidean distance transform of a binary raster (two
/// separable passes of the lower-envelope-of-parabolas algorithm), with the
/// index of the nearest feature cell. Distances are in cell units squared.
/// Feature cells are those where `is_feature` is nonzero.
struct DistanceTransform
{
  std::vector<double> squared_distance;
  std::vector<int> nearest;
};

DistanceTransform exact_distance_transform(
  const std::vector<std::uint8_t>& is_feature, int rows, int cols);

} // namespace medax

#endif // MEDAX__ENVIRONMENT_HPP
