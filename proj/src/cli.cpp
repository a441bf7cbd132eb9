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

#include <medax/cli.hpp>
#include <medax/errors.hpp>
#include <medax/report.hpp>
#include <medax/scenario.hpp>
#include <medax/svg.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace medax {

namespace {

void write_file(const std::string& path, const std::string& content)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw LoadError("cannot write '" + path + "'");
  f << content;
}

template<typename Fn>
void write_stream(const std::string& path, const Fn& fn)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw LoadError("cannot write '" + path + "'");
  fn(f);
}

//==============================================================================
struct RunArgs
{
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string method;
  std::string dump_traj;
  std::string plot;
  std::string dump_pois;
};

int do_run(const RunArgs& a, std::ostream& out)
{
  Scenario s = load_scenario(a.scenario);
  SimConfig config = s.config;
  if (a.seed)
    config.rng_seed = *a.seed;
  if (!a.method.empty())
    config.method = method_from_string(a.method);
  config.record_pois = !a.dump_pois.empty() || !a.plot.empty();

  const World world = build_world(s.map.env, s.map.cell_size, config.poi);
  const SimReport report =
    run(world, s.make_agents(world, config.rng_seed), config);

  out << "scenario " << s.name << " method " << to_string(config.method)
      << " outcome " << to_string(report.outcome) << " frames "
      << report.frames_used << " mean_frame_ms " << report.mean_frame_ms
      << " poi_overhead_ms " << report.poi_overhead_ms << "\n";
  for (const AgentReport& r : report.agents)
  {
    out << "  agent " << r.id << " " << to_string(r.model)
        << (r.reached ? " reached" : " unfinished") << " path_length "
        << r.path_length << " reference_length " << r.reference_length
        << "\n";
  }

  if (!a.dump_traj.empty())
  {
    write_stream(a.dump_traj,
      [&](std::ostream& f) { write_trajectory_csv(report, f); });
  }
  if (!a.dump_pois.empty())
    write_stream(a.dump_pois, [&](std::ostream& f) { write_poi_csv(report, f); });
  if (!a.plot.empty())
  {
    std::vector<PoiRecord> shifted;
    for (const PoiRecord& p : report.pois)
    {
      if (p.shifted)
        shifted.push_back(p);
    }
    write_file(a.plot,
      render_svg(world.env, nullptr, report.agents, shifted));
  }
  return report.success ? exit_ok : exit_run_failure;
}

//==============================================================================
struct BenchArgs
{
  std::string suite = "all";
  int trials = 20;
  int agents = 0;
  std::string out;
  std::uint64_t seed = 0;
};

int do_bench(const BenchArgs& a, std::ostream& out)
{
  if (a.trials < 1)
    throw LoadError("--trials must be at least 1");

  std::vector<Benchmark> maps;
  if (a.suite == "all")
    maps = benchmark_suite();
  else
    maps.push_back(benchmark_by_name(a.suite));

  SimConfig config;
  config.rng_seed = a.seed;

  std::vector<BenchmarkResult> results;
  for (const Benchmark& b : maps)
  {
    results.push_back(run_benchmark(b, a.agents, a.trials, config,
      {Method::GrvoPlain, Method::GrvoModulated}));
  }

  print_table(results, out);
  if (!a.out.empty())
    write_file(a.out, report_json(results));
  return exit_ok;
}

//==============================================================================
struct SkeletonArgs
{
  std::string scenario;
  std::string map;
  std::string plot;
};

int do_skeleton(const SkeletonArgs& a, std::ostream& out)
{
  if (a.scenario.empty() == a.map.empty())
    throw LoadError("skeleton needs exactly one of --scenario or --map");

  const Benchmark b = a.map.empty() ? load_scenario(a.scenario).map
                                    : benchmark_by_name(a.map);
  const OccupancyGrid grid = rasterize(b.env, b.cell_size);
  const SkeletonGraph g = extract_skeleton(grid);
  out << "map " << b.name << " vertices " << g.size() << " components "
      << g.component_count() << "\n";
  for (const std::string& line : g.build_log())
    out << "  " << line << "\n";
  write_file(a.plot, render_svg(b.env, &g));
  return exit_ok;
}

} // anonymous namespace

//==============================================================================
int cli_run(int argc, const char* const* argv, std::ostream& out,
  std::ostream& err)
{
  CLI::App app{"Multi-agent navigation with skeleton-based yield areas"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
  run_cmd->add_option("--scenario", run_args.scenario, "scenario JSON")
    ->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "placement seed");
  run_cmd->add_option("--method", run_args.method,
    "grvo_plain or grvo_modulated");
  run_cmd->add_option("--dump-traj", run_args.dump_traj, "trajectory CSV");
  run_cmd->add_option("--plot", run_args.plot, "trajectory SVG");
  run_cmd->add_option("--dump-pois", run_args.dump_pois, "POI CSV");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark suite");
  bench_cmd->add_option("--suite", bench_args.suite, "all, I, II, III, IV")
    ->check(CLI::IsMember({"all", "I", "II", "III", "IV"}));
  bench_cmd->add_option("--trials", bench_args.trials, "trials per method");
  bench_cmd->add_option("--agents", bench_args.agents,
    "agents per trial, 0 for the map default");
  bench_cmd->add_option("--out", bench_args.out, "report JSON");
  bench_cmd->add_option("--seed", bench_args.seed, "first trial seed");

  SkeletonArgs skel_args;
  auto* skel_cmd = app.add_subcommand("skeleton", "plot the medial axis");
  skel_cmd->add_option("--scenario", skel_args.scenario, "scenario JSON");
  skel_cmd->add_option("--map", skel_args.map, "built-in map name");
  skel_cmd->add_option("--plot", skel_args.plot, "output SVG")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config_error;
  }

  try
  {
    if (*run_cmd)
    {
      if (*seed_opt)
        run_args.seed = seed;
      return do_run(run_args, out);
    }
    if (*bench_cmd)
      return do_bench(bench_args, out);
    return do_skeleton(skel_args, out);
  }
  catch (const LoadError& e)
  {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  }
  catch (const SetupError& e)
  {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  }
  catch (const ConstructionError& e)
  {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
    return exit_run_failure;
  }
}

} // namespace medax
