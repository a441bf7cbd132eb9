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

#ifndef MEDAX__POI_HPP
#define MEDAX__POI_HPP

#include <medax/kinematics.hpp>
#include <medax/skeleton.hpp>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace medax {

//==============================================================================
struct PoiParams
{
  /// Yield-area scale: a POI involving n agents needs clearance
  /// eta * r_agent * (n + 1).
  double eta = 2.0;

  /// Direction tolerance of the opposing-motion test.
  double epsilon = 0.2;

  /// Agents slower than v_min_fraction * v_max count as stationary.
  double v_min_fraction = 0.05;

  /// Largest participant count kept in the shift table.
  int n_max = 8;

  /// Distance within which two POI estimates are considered the same point.
  double snap_tolerance = 1.5;

  /// Global shift phase from the precomputed table instead of a full scan.
  bool use_shift_table = true;

  /// Chord length used for path tangents, as a multiple of r_agent.
  double tangent_span_factor = 2.0;
};

/// Clearance required by a POI with n participants.
inline double required_radius(const PoiParams& params, double r_agent, int n)
{
  return params.eta * r_agent * (n + 1);
}

//==============================================================================
/// Estimated meeting point of opposing agents on the skeleton.
struct Poi
{
  Vector2 position = Vector2::Zero();

  /// Circular-domain radius at `position` (edge-interpolated or at the anchor).
  double radius = 0.0;

  /// Ids (lower, higher) of the agent pair whose path produced the POI.
  std::pair<int, int> source{-1, -1};

  /// Vertex sequence of that path, used for on-path shifting.
  std::vector<VertexId> path;

  /// Sorted, unique agent ids.
  std::vector<int> participants;

  /// Participant count for the clearance rule. Merging adds counts, so this
  /// can exceed participants.size() when POIs share an agent.
  int n = 2;

  bool shifted = false;

  /// Vertex the POI sits on after shifting, or the nearer endpoint of its
  /// path edge otherwise.
  VertexId anchor = no_vertex;
};

//==============================================================================
/// For every vertex and n = 2..n_max, the Euclidean-nearest vertex satisfying
/// the clearance rule (ties to the lowest index), or no_vertex.
class ShiftTable
{
public:
  ShiftTable() = default;

  int n_max() const { return _n_max; }
  std::size_t size() const { return _vertices; }

  /// no_vertex when nothing qualifies. n must be in [2, n_max].
  VertexId lookup(VertexId s, int n) const
  {
    return _table[static_cast<std::size_t>(s) * (_n_max - 1) + (n - 2)];
  }

private:
  friend ShiftTable build_shift_table(const SkeletonGraph& g, int n_max,
    double r_agent, const PoiParams& params);

  int _n_max = 0;
  std::size_t _vertices = 0;
  std::vector<VertexId> _table;
};

ShiftTable build_shift_table(const SkeletonGraph& g, int n_max,
  double r_agent, const PoiParams& params);

//==============================================================================
/// Velocity estimates entering opposing-motion detection for one agent.
struct MotionEstimate
{
  /// Direction reference (the agent's desired velocity for itself, the
  /// finite-difference velocity for neighbors).
  Vector2 direction;

  /// Speed used in the arc-length balance.
  double speed;
};

/// Parameter alpha in [0, 1] where prefix / speed_i = suffix / speed_j.
double balance_alpha(double speed_i, double speed_j);

/// Unit chord from the path start to the point `span` further along. The
/// end tangent is obtained by reversing the path.
Vector2 start_tangent(const SkeletonPath& path, double span);

/// Opposing-motion test on a path from s_i to s_j: both agents move along the
/// path toward each other within tolerance epsilon.
bool opposing(const SkeletonPath& path, const Vector2& dir_i,
  const Vector2& dir_j, double span, double epsilon);

/// POI for the pair (self, other) on the path P_ij from self's projection to
/// other's, or nothing when they are not approaching each other.
std::optional<Poi> detect_pair(const AgentState& self,
  const MotionEstimate& self_motion, const AgentState& other,
  const MotionEstimate& other_motion, const SkeletonGraph& g,
  const PoiParams& params);

/// All POIs between self and neighbors within its sensing radius. The self
/// direction is its desired velocity `v_star`; neighbor motion comes from
/// finite differences of their snapshots over `dt`.
std::vector<Poi> detect_pois(const AgentState& self, const Vector2& v_star,
  std::span<const AgentState> neighbors, const SkeletonGraph& g,
  const PoiParams& params, double dt);

/// Returns the POI unchanged (with count n) when its radius already satisfies
/// the clearance rule; otherwise the Euclidean-nearest qualifying vertex on
/// `path`, then over all vertices; nothing when no vertex qualifies. With a
/// table the global phase starts from the POI's anchor vertex.
std::optional<Poi> shift_poi(const Poi& poi, int n, const SkeletonGraph& g,
  std::span<const VertexId> path, double r_agent, const PoiParams& params,
  const ShiftTable* table = nullptr);

struct MergeResult
{
  std::vector<Poi> pois;

  /// Passes over the pair list, including the final one without merges.
  int iterations = 0;
  int merges = 0;
};

/// Shift every POI for n = 2, then merge nearby pairs until no pair merges.
MergeResult merge_pois(std::vector<Poi> pois, const SkeletonGraph& g,
  double r_agent, const PoiParams& params, const ShiftTable* table = nullptr);

/// Steers toward the nearest POI when it was shifted; v_star otherwise.
Vector2 modulate(const Vector2& v_star, const AgentState& self,
  std::span<const Poi> pois);

//==============================================================================
struct PoiPlan
{
  std::vector<Poi> pois;
  Vector2 velocity;
  bool modulated = false;
};

/// Detection, shifting, merging, and modulation for one agent and frame.
PoiPlan plan_pois(const AgentState& self, const Vector2& v_star,
  std::span<const AgentState> neighbors, const SkeletonGraph& g,
  const PoiParams& params, double dt, const ShiftTable* table = nullptr);

} // namespace medax

#endif // MEDAX__POI_HPP
