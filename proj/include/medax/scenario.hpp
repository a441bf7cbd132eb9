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

#ifndef MEDAX__SCENARIO_HPP
#define MEDAX__SCENARIO_HPP

#include <medax/benchmarks.hpp>

#include <string>
#include <vector>

namespace medax {

//==============================================================================
/// A map with either explicit agents or a random spawn specification, plus
/// simulation overrides.
///
/// JSON layout:
///   {
///     "map": {"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}
///       or "benchmark": "garage",
///     "cell_size": 1.0,
///     "agents": [{"model": "dubins", "start": [x, y, theta],
///                 "goal": [x, y], "v_max": 2.0}, ...],
///     "spawn": {"count": 4, "model": "diff_drive",
///               "regions": [{"start": [x0, y0, x1, y1],
///                            "goal": [x0, y0, x1, y1]}, ...]},
///     "config": {"dt": 0.05, "eta": 2.0, ...},
///     "methods": ["grvo_plain", "grvo_modulated"]
///   }
struct Scenario
{
  std::string name;
  Benchmark map;

  std::vector<AgentState> agents;
  int spawn_count = 0;
  ModelKind spawn_model = ModelKind::DiffDrive;

  SimConfig config;
  std::vector<Method> methods;

  /// Explicit agents, or a placement drawn with the given seed.
  std::vector<AgentState> make_agents(
    const World& world, std::uint64_t seed) const;
};

/// Throws LoadError for unreadable files, malformed JSON, unknown keys, or
/// invalid values.
Scenario load_scenario(const std::string& path);

Scenario parse_scenario(const std::string& text, const std::string& name);

} // namespace medax

#endif // MEDAX__SCENARIO_HPP
