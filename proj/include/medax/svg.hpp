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

#ifndef MEDAX__SVG_HPP
#define MEDAX__SVG_HPP

#include <medax/simulator.hpp>

#include <span>
#include <string>

namespace medax {

//==============================================================================
struct SvgOptions
{
  /// Pixels per world unit.
  double scale = 4.0;

  /// Draw every k-th vertex's circular domain when a skeleton is given.
  int domain_stride = 40;
};

/// Map with optional overlays: skeleton edges and sampled circular domains,
/// one colored polyline per agent trajectory, and POI markers (filled when
/// shifted). Output is byte-identical for identical input.
std::string render_svg(const PolyEnvironment& env,
  const SkeletonGraph* skeleton = nullptr,
  std::span<const AgentReport> trajectories = {},
  std::span<const PoiRecord> pois = {},
  const SvgOptions& options = {});

} // namespace medax

#endif // MEDAX__SVG_HPP
