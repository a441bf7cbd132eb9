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

#include <medax/poi.hpp>

#include <algorithm>
#include <limits>

namespace medax {

namespace {

//==============================================================================
/// Nearest vertex to p among `candidates` with enough clearance, ties to the
/// lowest index.
template<typename Range>
VertexId nearest_qualifying(const SkeletonGraph& g, const Vector2& p,
  const Range& candidates, double threshold)
{
  VertexId best = no_vertex;
  double best_d = std::numeric_limits<double>::infinity();
  for (const VertexId v : candidates)
  {
    if (g.radius(v) < threshold)
      continue;
    const double d = (g.position(v) - p).squaredNorm();
    if (d < best_d || (d == best_d && v < best))
    {
      best_d = d;
      best = v;
    }
  }
  return best;
}

//==============================================================================
struct AllVertices
{
  VertexId count;

  struct iterator
  {
    VertexId v;
    VertexId operator*() const { return v; }
    iterator& operator++() { ++v; return *this; }
    bool operator!=(const iterator& o) const { return v != o.v; }
  };

  iterator begin() const { return {0}; }
  iterator end() const { return {count}; }
};

//==============================================================================
Poi shifted_to(const Poi& poi, VertexId v, int n, const SkeletonGraph& g)
{
  Poi out = poi;
  out.position = g.position(v);
  out.radius = g.radius(v);
  out.anchor = v;
  out.shifted = true;
  out.n = n;
  return out;
}

//==============================================================================
Vector2 end_tangent(const SkeletonPath& path, double span)
{
  const double total = path.length();
  const double s = std::min(span, total);
  const Vector2 chord =
    point_at_length(path, total - s).point - path.points.back();
  if (chord.norm() > 1e-12)
    return chord.normalized();
  return (path.points[path.points.size() - 2] - path.points.back())
    .normalized();
}

std::vector<int> union_ids(const std::vector<int>& a, const std::vector<int>& b)
{
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
    std::back_inserter(out));
  return out;
}

} // anonymous namespace

//==============================================================================
ShiftTable build_shift_table(const SkeletonGraph& g, int n_max,
  double r_agent, const PoiParams& params)
{
  ShiftTable t;
  t._n_max = std::max(n_max, 2);
  t._vertices = g.size();
  const std::size_t width = static_cast<std::size_t>(t._n_max - 1);
  t._table.assign(g.size() * width, no_vertex);

  for (int n = 2; n <= t._n_max; ++n)
  {
    const double threshold = required_radius(params, r_agent, n);
    std::vector<VertexId> qualifying;
    for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v)
    {
      if (g.radius(v) >= threshold)
        qualifying.push_back(v);
    }

    for (VertexId s = 0; s < static_cast<VertexId>(g.size()); ++s)
    {
      t._table[static_cast<std::size_t>(s) * width + (n - 2)] =
        nearest_qualifying(g, g.position(s), qualifying, threshold);
    }
  }
  return t;
}

//==============================================================================
double balance_alpha(double speed_i, double speed_j)
{
  const double total = speed_i + speed_j;
  if (total <= 0.0)
    return 0.5;
  return speed_i / total;
}

//==============================================================================
Vector2 start_tangent(const SkeletonPath& path, double span)
{
  const double s = std::min(span, path.length());
  const Vector2 chord = point_at_length(path, s).point - path.points.front();
  if (chord.norm() > 1e-12)
    return chord.normalized();
  return (path.points[1] - path.points[0]).normalized();
}

//==============================================================================
bool opposing(const SkeletonPath& path, const Vector2& dir_i,
  const Vector2& dir_j, double span, double epsilon)
{
  if (path.points.size() < 2)
    return false;
  const double ni = dir_i.norm();
  const double nj = dir_j.norm();
  if (ni <= 0.0 || nj <= 0.0)
    return false;

  const double threshold = 1.0 - epsilon;
  return start_tangent(path, span).dot(dir_i) / ni > threshold
    && end_tangent(path, span).dot(dir_j) / nj > threshold;
}

//==============================================================================
std::optional<Poi> detect_pair(const AgentState& self,
  const MotionEstimate& self_motion, const AgentState& other,
  const MotionEstimate& other_motion, const SkeletonGraph& g,
  const PoiParams& params)
{
  const VertexId s_i = g.nearest_vertex(self.position());
  const VertexId s_j = g.nearest_vertex(other.position());
  if (g.component(s_i) != g.component(s_j))
    return std::nullopt;

  const SkeletonPath path = shortest_path_symmetric(g, s_i, s_j);

  Poi poi;
  poi.source = {std::min(self.id, other.id), std::max(self.id, other.id)};
  poi.path = path.vertices;
  poi.participants = {poi.source.first, poi.source.second};
  poi.n = 2;

  if (path.vertices.size() == 1)
  {
    poi.position = g.position(s_i);
    poi.radius = g.radius(s_i);
    poi.anchor = s_i;
    return poi;
  }

  const double span = params.tangent_span_factor * self.bounding_radius();
  if (!opposing(path, self_motion.direction, other_motion.direction, span,
    params.epsilon))
  {
    return std::nullopt;
  }

  const double alpha = balance_alpha(self_motion.speed, other_motion.speed);
  const PathSample sample = point_at(path, alpha);
  poi.position = sample.point;
  poi.radius = sample.radius;

  const std::size_t k = sample.segment;
  const VertexId a = path.vertices[k];
  const VertexId b = path.vertices[std::min(k + 1, path.vertices.size() - 1)];
  const double da = (g.position(a) - sample.point).squaredNorm();
  const double db = (g.position(b) - sample.point).squaredNorm();
  poi.anchor = (da < db || (da == db && a < b)) ? a : b;
  return poi;
}

//==============================================================================
std::vector<Poi> detect_pois(const AgentState& self, const Vector2& v_star,
  std::span<const AgentState> neighbors, const SkeletonGraph& g,
  const PoiParams& params, double dt)
{
  std::vector<Poi> out;
  const double v_min = params.v_min_fraction * self.limits.v_max;
  if (v_star.norm() < v_min)
    return out;

  const MotionEstimate self_motion{v_star,
    std::max(self.finite_difference_velocity(dt).norm(), v_min)};

  for (const AgentState& other : neighbors)
  {
    if (other.id == self.id)
      continue;
    if ((other.position() - self.position()).norm() >= self.sensing_radius)
      continue;

    const Vector2 v_other = other.finite_difference_velocity(dt);
    const double speed = v_other.norm();
    if (speed < v_min)
      continue;

    if (auto poi = detect_pair(self, self_motion, other,
      MotionEstimate{v_other, speed}, g, params))
    {
      out.push_back(std::move(*poi));
    }
  }
  return out;
}

//==============================================================================
std::optional<Poi> shift_poi(const Poi& poi, int n, const SkeletonGraph& g,
  std::span<const VertexId> path, double r_agent, const PoiParams& params,
  const ShiftTable* table)
{
  const double threshold = required_radius(params, r_agent, n);
  if (poi.radius >= threshold)
  {
    Poi out = poi;
    out.n = n;
    return out;
  }

  VertexId v = nearest_qualifying(g, poi.position, path, threshold);
  if (v != no_vertex)
    return shifted_to(poi, v, n, g);

  if (table && poi.anchor != no_vertex && n <= table->n_max())
  {
    v = table->lookup(poi.anchor, n);
  }
  else
  {
    v = nearest_qualifying(g, poi.position,
      AllVertices{static_cast<VertexId>(g.size())}, threshold);
  }

  if (v == no_vertex)
    return std::nullopt;
  return shifted_to(poi, v, n, g);
}

//==============================================================================
MergeResult merge_pois(std::vector<Poi> pois, const SkeletonGraph& g,
  double r_agent, const PoiParams& params, const ShiftTable* table)
{
  MergeResult result;

  for (Poi& poi : pois)
  {
    if (auto s = shift_poi(poi, 2, g, poi.path, r_agent, params, table))
      poi = std::move(*s);
  }

  bool more = pois.size() >= 2;
  while (more)
  {
    more = false;
    ++result.iterations;

    for (std::size_t i = 0; i < pois.size() && !more; ++i)
    {
      for (std::size_t j = i + 1; j < pois.size() && !more; ++j)
      {
        const Poi& a = pois[i];
        const Poi& b = pois[j];
        const double gate =
          params.eta * r_agent * std::min(a.n + 1, b.n + 1);
        if ((a.position - b.position).norm() > gate)
          continue;

        const int n = a.n + b.n;
        std::optional<Poi> merged =
          shift_poi(a, n, g, a.path, r_agent, params, table);
        if (!merged)
          merged = shift_poi(b, n, g, b.path, r_agent, params, table);
        if (!merged)
          continue;

        merged->participants = union_ids(a.participants, b.participants);
        pois[i] = std::move(*merged);
        pois.erase(pois.begin() + static_cast<std::ptrdiff_t>(j));
        ++result.merges;
        more = true;
      }
    }
  }

  result.pois = std::move(pois);
  return result;
}

//==============================================================================
Vector2 modulate(const Vector2& v_star, const AgentState& self,
  std::span<const Poi> pois)
{
  if (pois.empty())
    return v_star;

  const Vector2 p = self.position();
  std::size_t best = 0;
  double best_d = (pois[0].position - p).squaredNorm();
  for (std::size_t k = 1; k < pois.size(); ++k)
  {
    const double d = (pois[k].position - p).squaredNorm();
    if (d < best_d)
    {
      best_d = d;
      best = k;
    }
  }

  if (!pois[best].shifted)
    return v_star;
  return clamp_norm(Vector2(pois[best].position - p), self.limits.v_max);
}

//==============================================================================
PoiPlan plan_pois(const AgentState& self, const Vector2& v_star,
  std::span<const AgentState> neighbors, const SkeletonGraph& g,
  const PoiParams& params, double dt, const ShiftTable* table)
{
  PoiPlan plan;
  const double r_agent = self.bounding_radius();
  plan.pois = merge_pois(detect_pois(self, v_star, neighbors, g, params, dt),
    g, r_agent, params, params.use_shift_table ? table : nullptr).pois;
  plan.velocity = modulate(v_star, self, plan.pois);
  plan.modulated = plan.velocity != v_star;
  return plan;
}

} // namespace medax
