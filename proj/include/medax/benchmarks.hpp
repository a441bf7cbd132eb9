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

#ifndef MEDAX__BENCHMARKS_HPP
#define MEDAX__BENCHMARKS_HPP

#include <medax/simulator.hpp>

#include <string>
#include <vector>

namespace medax {

//==============================================================================
struct Benchmark
{
  std::string name;

  /// Roman numeral of the built-in suite entry, empty for auxiliary maps.
  std::string label;

  PolyEnvironment env;
  double cell_size = 1.0;
  std::vector<SpawnRegion> regions;
  int default_agents = 2;
};

/// Two 70x90 chambers joined by a 60-long corridor of width 9.
Benchmark dumbbell_benchmark();

/// Hexagonal obstacle lattice between two open ends.
Benchmark bee_benchmark();

/// Two long parallel obstacles forming three corridors.
Benchmark maze_benchmark();

/// Long corridor of width 9 with a pocket off its left half.
Benchmark garage_benchmark();

/// U-shaped map whose arms are narrower than its bend.
Benchmark u_benchmark();

/// 200x200 empty square.
Benchmark open_benchmark();

/// Straight corridor [0, length] x [0, width].
Benchmark corridor_benchmark(double length = 100.0, double width = 9.0);

/// The four suite maps in order I..IV.
std::vector<Benchmark> benchmark_suite();

/// Looks up by label ("I".."IV") or name. Throws LoadError otherwise.
Benchmark benchmark_by_name(const std::string& key);

//==============================================================================
struct WidthMeasure
{
  /// Narrowest freespace gap between two non-adjacent boundary edges.
  double corridor_width;

  /// Twice the largest clearance at any freespace sample.
  double chamber_diameter;
};

/// Measures an environment from its polygon geometry. Clearance is sampled
/// on a grid of spacing `sample`.
WidthMeasure measure_widths(const PolyEnvironment& env, double sample = 1.0);

/// Throws ConstructionError unless
/// d < corridor_width < 2 d < chamber_diameter, with d = 2 (r_agent + eps).
void check_width_invariant(const Benchmark& b, double r_agent, double eps);

} // namespace medax

#endif // MEDAX__BENCHMARKS_HPP
