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

#ifndef MEDAX__REPORT_HPP
#define MEDAX__REPORT_HPP

#include <medax/benchmarks.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace medax {

//==============================================================================
/// Batch results for every method on one map.
struct BenchmarkResult
{
  std::string name;
  std::string label;
  int agents = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double precompute_ms = 0.0;
  std::size_t skeleton_vertices = 0;
  WidthMeasure widths{0.0, 0.0};
  std::vector<BatchReport> methods;
};

/// Runs every method on a built-in map.
BenchmarkResult run_benchmark(const Benchmark& b, int agents, int trials,
  const SimConfig& config, const std::vector<Method>& methods);

/// Report JSON: one entry per map with per-method success rate, trajectory
/// length, frame rate, and POI overhead. Field layout follows
/// schemas/report.schema.json.
std::string report_json(const std::vector<BenchmarkResult>& results);

/// Fixed-width text table of the same numbers.
void print_table(const std::vector<BenchmarkResult>& results, std::ostream& out);

} // namespace medax

#endif // MEDAX__REPORT_HPP
