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

#include <medax/svg.hpp>

#include <array>
#include <cstdio>

namespace medax {

namespace {

constexpr std::array<const char*, 8> palette = {
  "#1f77b4", "#2ca02c", "#d62728", "#9467bd",
  "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

class Writer
{
public:
  Writer(const Eigen::AlignedBox2d& bounds, double scale)
  : _bounds(bounds), _scale(scale)
  {
  }

  std::string num(double v) const
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }

  std::string x(double wx) const { return num((wx - _bounds.min().x()) * _scale); }
  std::string y(double wy) const { return num((_bounds.max().y() - wy) * _scale); }
  std::string len(double w) const { return num(w * _scale); }

  std::string points(const std::vector<Vector2>& pts) const
  {
    std::string s;
    for (std::size_t k = 0; k < pts.size(); ++k)
    {
      if (k > 0)
        s += ' ';
      s += x(pts[k].x()) + "," + y(pts[k].y());
    }
    return s;
  }

private:
  Eigen::AlignedBox2d _bounds;
  double _scale;
};

} // anonymous namespace

//==============================================================================
std::string render_svg(const PolyEnvironment& env,
  const SkeletonGraph* skeleton, std::span<const AgentReport> trajectories,
  std::span<const PoiRecord> pois, const SvgOptions& options)
{
  const Eigen::AlignedBox2d& b = env.bounds();
  const Writer w(b, options.scale);
  const Vector2 size = b.sizes() * options.scale;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w.num(size.x())
    + "\" height=\"" + w.num(size.y()) + "\" viewBox=\"0 0 " + w.num(size.x())
    + " " + w.num(size.y()) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#555555\"/>\n";
  out += "  <polygon fill=\"#ffffff\" points=\"" + w.points(env.outer())
    + "\"/>\n";
  for (const auto& hole : env.holes())
  {
    out += "  <polygon fill=\"#555555\" points=\"" + w.points(hole)
      + "\"/>\n";
  }

  if (skeleton)
  {
    const SkeletonGraph& g = *skeleton;
    out += "  <g stroke=\"#e41a1c\" stroke-width=\"1\" "
      "stroke-dasharray=\"2,1\">\n";
    for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v)
    {
      for (const auto& e : g.neighbors(v))
      {
        if (e.to < v)
          continue;
        const Vector2& p = g.position(v);
        const Vector2& q = g.position(e.to);
        out += "    <line x1=\"" + w.x(p.x()) + "\" y1=\"" + w.y(p.y())
          + "\" x2=\"" + w.x(q.x()) + "\" y2=\"" + w.y(q.y()) + "\"/>\n";
      }
    }
    out += "  </g>\n";

    out += "  <g fill=\"none\" stroke=\"#377eb8\" stroke-width=\"0.8\">\n";
    const int stride = std::max(options.domain_stride, 1);
    for (VertexId v = 0; v < static_cast<VertexId>(g.size()); v += stride)
    {
      const Vector2& p = g.position(v);
      out += "    <circle cx=\"" + w.x(p.x()) + "\" cy=\"" + w.y(p.y())
        + "\" r=\"" + w.len(g.radius(v)) + "\"/>\n";
    }
    out += "  </g>\n";
  }

  for (std::size_t k = 0; k < trajectories.size(); ++k)
  {
    const AgentReport& a = trajectories[k];
    std::vector<Vector2> pts;
    pts.reserve(a.trajectory.size());
    for (const auto& s : a.trajectory)
      pts.push_back(s.pose.head<2>());
    const char* color = palette[k % palette.size()];
    out += "  <polyline fill=\"none\" stroke=\"" + std::string(color)
      + "\" stroke-width=\"1.5\" points=\"" + w.points(pts) + "\"/>\n";
    if (!pts.empty())
    {
      out += "  <circle fill=\"" + std::string(color) + "\" cx=\""
        + w.x(pts.front().x()) + "\" cy=\"" + w.y(pts.front().y())
        + "\" r=\"3\"/>\n";
    }
  }

  for (const PoiRecord& p : pois)
  {
    out += "  <circle cx=\"" + w.x(p.position.x()) + "\" cy=\""
      + w.y(p.position.y()) + "\" r=\"2\" "
      + (p.shifted ? "fill=\"#000000\"" : "fill=\"none\" stroke=\"#000000\"")
      + "/>\n";
  }

  out += "</svg>\n";
  return out;
}

} // namespace medax
