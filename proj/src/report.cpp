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

#include <medax/report.hpp>

#include <json.hpp>

#include <cstdio>
#include <ostream>

namespace medax {

//==============================================================================
BenchmarkResult run_benchmark(const Benchmark& b, int agents, int trials,
  const SimConfig& config, const std::vector<Method>& methods)
{
  const World world = build_world(b.env, b.cell_size, config.poi);

  BenchmarkResult r;
  r.name = b.name;
  r.label = b.label;
  r.agents = agents > 0 ? agents : b.default_agents;
  r.trials = trials;
  r.seed = config.rng_seed;
  r.precompute_ms = world.precompute_ms;
  r.skeleton_vertices = world.skeleton.size();
  r.widths = measure_widths(b.env);

  const int n = r.agents;
  const auto regions = b.regions;
  const AgentGenerator generator = [&world, n, regions](std::mt19937_64& rng)
  {
    return place_random_agents(world, n, rng, regions);
  };

  for (const Method m : methods)
  {
    SimConfig c = config;
    c.method = m;
    r.methods.push_back(batch(world, generator, c, trials));
  }
  return r;
}

//==============================================================================
std::string report_json(const std::vector<BenchmarkResult>& results)
{
  using nlohmann::json;
  json doc;
  doc["schema_version"] = 1;
  doc["benchmarks"] = json::array();

  for (const BenchmarkResult& r : results)
  {
    json entry;
    entry["name"] = r.name;
    entry["label"] = r.label;
    entry["agents"] = r.agents;
    entry["trials"] = r.trials;
    entry["seed"] = r.seed;
    entry["precompute_ms"] = r.precompute_ms;
    entry["skeleton_vertices"] = r.skeleton_vertices;
    entry["corridor_width"] = r.widths.corridor_width;
    entry["chamber_diameter"] = r.widths.chamber_diameter;
    entry["methods"] = json::array();

    for (const BatchReport& m : r.methods)
    {
      json j;
      j["method"] = std::string(to_string(m.method));
      j["success_rate"] = m.success_rate;
      j["successes"] = m.successes;
      if (m.reached_agents > 0)
      {
        j["trajectory_length"] = m.mean_path_length;
        j["reference_length"] = m.mean_reference_length;
      }
      else
      {
        j["trajectory_length"] = nullptr;
        j["reference_length"] = nullptr;
      }
      j["reached_agents"] = m.reached_agents;
      j["fps"] = m.mean_fps;
      j["mean_frame_ms"] = m.mean_frame_ms;
      j["poi_overhead_ms"] = m.mean_poi_overhead_ms;
      j["mean_frames"] = m.mean_frames;
      j["collisions"] = m.collisions;
      j["deadlocks"] = m.deadlocks;
      j["timeouts"] = m.timeouts;
      entry["methods"].push_back(j);
    }
    doc["benchmarks"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

//==============================================================================
void print_table(const std::vector<BenchmarkResult>& results, std::ostream& out)
{
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-15s %6s %6s %10s %8s %9s %9s\n",
    "map", "method", "agents", "succ", "traj_len", "fps", "poi_ms", "fails");
  out << line;
  for (const BenchmarkResult& r : results)
  {
    for (const BatchReport& m : r.methods)
    {
      char length[32];
      if (m.reached_agents > 0)
        std::snprintf(length, sizeof(length), "%.1f", m.mean_path_length);
      else
        std::snprintf(length, sizeof(length), "-");
      char fails[32];
      std::snprintf(fails, sizeof(fails), "%dc/%dd/%dt", m.collisions,
        m.deadlocks, m.timeouts);
      std::snprintf(line, sizeof(line),
        "%-10s %-15s %6d %5.0f%% %10s %8.1f %9.3f %9s\n", r.name.c_str(),
        std::string(to_string(m.method)).c_str(), r.agents,
        100.0 * m.success_rate, length, m.mean_fps, m.mean_poi_overhead_ms,
        fails);
      out << line;
    }
  }
}

} // namespace medax
