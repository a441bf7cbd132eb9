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

// Acceptance suite. One PASS/FAIL line per criterion; nonzero exit on any
// failure.

#include "oracles.hpp"

#include <medax/benchmarks.hpp>
#include <medax/errors.hpp>
#include <medax/simulator.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

using namespace medax;

namespace {

// Pinned tolerances.
constexpr double alpha_residual = 1e-6;      // fraction of path length
constexpr double fw_tolerance = 0.0;         // exact
constexpr double c1_budget_s = 60.0;
constexpr double c4_min_modulated = 0.9;
constexpr double c4_max_plain = 0.2;
constexpr double c4_budget_s = 600.0;
constexpr double c5_max_ratio = 1.6;
constexpr double c6_budget_ms = 50.0;

const double r_agent = BodySize{}.bounding_radius();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail)
{
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id,
    detail.c_str());
  std::fflush(stdout);
  if (!ok)
    ++failures;
}

const World& world(const std::string& name)
{
  static std::map<std::string, World> cache;
  auto it = cache.find(name);
  if (it == cache.end())
  {
    const Benchmark b = benchmark_by_name(name);
    it = cache.emplace(name, build_world(b.env, b.cell_size)).first;
  }
  return it->second;
}

AgentState moving(int id, const Vector2& p, const Vector2& v)
{
  AgentState a = make_agent(id, ModelKind::DiffDrive,
    {p.x(), p.y(), std::atan2(v.y(), v.x())}, p);
  a.prev_pos = p - 0.05 * v;
  return a;
}

Poi poi_at(const SkeletonGraph& g, VertexId v, std::vector<VertexId> path = {})
{
  Poi p;
  p.position = g.position(v);
  p.radius = g.radius(v);
  p.anchor = v;
  p.path = std::move(path);
  p.participants = {0, 1};
  p.source = {0, 1};
  return p;
}

std::string fmt(const char* f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

//==============================================================================
void criterion_1()
{
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (const std::string name : {"dumbbell", "bee", "maze", "garage", "u"})
  {
    const Benchmark b = benchmark_by_name(name);
    const SkeletonGraph g = extract_skeleton(rasterize(b.env, b.cell_size));
    const std::size_t n = g.size();
    ok = ok && n <= 2000;

    const std::vector<double> fw = oracle::floyd_warshall(g);
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
    {
      for (std::size_t c = 0; c < n; ++c)
      {
        const double want = fw[a * n + c];
        const double got = g.distance(a, c);
        if (want == got)
          continue;
        worst = std::max(worst, std::isinf(want) || std::isinf(got)
          ? oracle::inf : std::abs(want - got));
      }
    }
    ok = ok && worst <= fw_tolerance;

    std::mt19937_64 rng(101);
    const Eigen::AlignedBox2d box = b.env.bounds();
    std::uniform_real_distribution<double> ux(box.min().x(), box.max().x());
    std::uniform_real_distribution<double> uy(box.min().y(), box.max().y());
    int sampled = 0, mismatched = 0;
    while (sampled < 500)
    {
      const Vector2 p(ux(rng), uy(rng));
      VertexId got;
      try
      {
        got = project(g, p);
      }
      catch (const DomainError&)
      {
        continue;
      }
      ++sampled;
      if (got != oracle::nearest_vertex(g, p))
        ++mismatched;
    }
    ok = ok && mismatched == 0;

    double radius_err = 0.0;
    for (std::size_t v = 0; v < n; ++v)
    {
      radius_err = std::max(radius_err, std::abs(g.radius(v)
        - oracle::clearance(b.env, g.position(v))));
    }
    ok = ok && radius_err <= b.cell_size * std::numbers::sqrt2;

    detail << name << " V=" << n << " apsp_err=" << worst
           << " proj_miss=" << mismatched << " radius_err="
           << fmt("%.3f", radius_err) << "; ";
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < c1_budget_s;
  detail << fmt("%.1f s", elapsed);
  report(1, ok, detail.str());
}

//==============================================================================
void criterion_2()
{
  PoiParams params;
  const double span = params.tangent_span_factor * r_agent;
  int instances = 0, bad = 0, missed = 0;
  double worst = 0.0;
  int round = 0;
  while (instances < 1000)
  {
    const std::string name =
      std::vector<std::string>{"bee", "dumbbell", "maze"}[round % 3];
    const SkeletonGraph& g = world(name).skeleton;
    std::mt19937_64 rng(200 + round++);
    std::uniform_int_distribution<VertexId> pick(0, g.size() - 1);
    std::uniform_real_distribution<double> speed(0.1, 2.0);
    for (int k = 0; k < 100 && instances < 1000; ++k)
    {
      const VertexId a = pick(rng), b = pick(rng);
      if (a == b || g.component(a) != g.component(b))
        continue;
      const SkeletonPath path = shortest_path_symmetric(g, a, b);
      const Vector2 di = start_tangent(path, span);
      const Vector2 dj = start_tangent(path.reversed(), span);
      const double si = speed(rng), sj = speed(rng);
      const auto poi = detect_pair(moving(0, g.position(a), si * di), {di, si},
        moving(1, g.position(b), sj * dj), {dj, sj}, g, params);
      ++instances;
      if (!poi)
      {
        ++missed;
        continue;
      }
      const double s = oracle::arc_length_of(path, poi->position);
      const double want = oracle::balance_by_bisection(path.length(), si, sj);
      const double rel = std::abs(s - want) / path.length();
      worst = std::max(worst, rel);
      if (rel >= alpha_residual)
        ++bad;
    }
  }

  // Two-to-one speeds in a straight corridor.
  const SkeletonGraph& g = world("corridor").skeleton;
  const VertexId a = project(g, {10, 4.5});
  const VertexId b = project(g, {90, 4.5});
  const SkeletonPath path = shortest_path_symmetric(g, a, b);
  const auto poi = detect_pair(
    moving(0, g.position(a), {2, 0}), {Vector2(1, 0), 2.0},
    moving(1, g.position(b), {-1, 0}), {Vector2(-1, 0), 1.0}, g, params);
  const Vector2 two_thirds = point_at(path, 2.0 / 3.0).point;
  const double off = poi ? (poi->position - two_thirds).norm() : oracle::inf;

  report(2, bad == 0 && missed == 0 && off <= params.snap_tolerance,
    fmt("%d instances, %d over residual, %d undetected, worst %.2e; "
      "2:1 offset %.3f (tol %.1f)", instances, bad, missed, worst, off,
      params.snap_tolerance));
}

//==============================================================================
void criterion_3()
{
  PoiParams params;
  int queries = 0, shift_bad = 0;
  for (const std::string name : {"dumbbell", "bee", "garage", "maze", "u"})
  {
    const SkeletonGraph& g = world(name).skeleton;
    std::mt19937_64 rng(300);
    std::uniform_int_distribution<VertexId> pick(0, g.size() - 1);
    std::uniform_int_distribution<int> count(2, params.n_max);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k)
    {
      const VertexId a = pick(rng), b = pick(rng);
      if (g.component(a) != g.component(b))
        continue;
      const SkeletonPath path = shortest_path(g, a, b);
      const PathSample sample = point_at(path, u(rng));
      Poi poi = poi_at(g, path.vertices[sample.segment], path.vertices);
      poi.position = sample.point;
      poi.radius = sample.radius;
      const int n = count(rng);
      ++queries;

      const auto got = shift_poi(poi, n, g, path.vertices, r_agent, params);
      const VertexId want = oracle::shift_scan(poi.position, poi.radius,
        required_radius(params, r_agent, n), g, path.vertices);
      const bool match = want == no_vertex ? !got
        : want == oracle::keep ? (got && !got->shifted)
        : (got && got->shifted && got->anchor == want);
      if (!match || (got && got->n != n))
        ++shift_bad;
    }
  }

  int table_entries = 0, table_bad = 0;
  for (const std::string name : {"dumbbell", "bee", "garage"})
  {
    const World& w = world(name);
    const SkeletonGraph& g = w.skeleton;
    for (VertexId s = 0; s < static_cast<VertexId>(g.size()); ++s)
    {
      for (int n = 2; n <= w.shift_table.n_max(); ++n)
      {
        const auto direct = shift_poi(poi_at(g, s), n, g, {}, r_agent, params);
        const VertexId want =
          direct ? (direct->shifted ? direct->anchor : s) : no_vertex;
        ++table_entries;
        if (w.shift_table.lookup(s, n) != want)
          ++table_bad;
      }
    }
  }

  int trials = 0, iter_bad = 0, admissible_bad = 0, fixpoint_bad = 0;
  for (const std::string name : {"dumbbell", "bee", "maze", "garage"})
  {
    const World& w = world(name);
    const SkeletonGraph& g = w.skeleton;
    std::mt19937_64 rng(301);
    std::uniform_int_distribution<VertexId> pick(0, g.size() - 1);
    std::uniform_int_distribution<int> count(2, 12);
    std::normal_distribution<double> jitter(0.0, 6.0);
    for (int trial = 0; trial < 50; ++trial)
    {
      const Vector2 centre = g.position(pick(rng));
      std::vector<Poi> in;
      const int m = count(rng);
      for (int k = 0; k < m; ++k)
      {
        const VertexId v =
          g.nearest_vertex(centre + Vector2(jitter(rng), jitter(rng)));
        const VertexId far = pick(rng);
        Poi p = poi_at(g, v, g.component(v) == g.component(far)
          ? shortest_path(g, v, far).vertices : std::vector<VertexId>{v});
        p.participants = {k, k + 100};
        p.source = {k, k + 100};
        in.push_back(p);
      }
      ++trials;
      const MergeResult r = merge_pois(in, g, r_agent, params, &w.shift_table);
      if (r.iterations > m)
        ++iter_bad;
      for (const Poi& p : r.pois)
      {
        if (p.shifted
          && !(g.radius(p.anchor) >= required_radius(params, r_agent, p.n)))
          ++admissible_bad;
      }
      for (std::size_t i = 0; i < r.pois.size(); ++i)
      {
        for (std::size_t j = i + 1; j < r.pois.size(); ++j)
        {
          const Poi& x = r.pois[i];
          const Poi& y = r.pois[j];
          if ((x.position - y.position).norm()
            > params.eta * r_agent * std::min(x.n + 1, y.n + 1))
            continue;
          const int n = x.n + y.n;
          if (shift_poi(x, n, g, x.path, r_agent, params, &w.shift_table)
            || shift_poi(y, n, g, y.path, r_agent, params, &w.shift_table))
            ++fixpoint_bad;
        }
      }
    }
  }

  report(3, shift_bad == 0 && table_bad == 0 && iter_bad == 0
      && admissible_bad == 0 && fixpoint_bad == 0 && queries >= 500,
    fmt("shift %d/%d mismatched; table %d/%d mismatched; merge %d trials: "
      "%d over iteration bound, %d inadmissible, %d not at fixpoint",
      shift_bad, queries, table_bad, table_entries, trials, iter_bad,
      admissible_bad, fixpoint_bad));
}

//==============================================================================
struct Batches
{
  BatchReport plain;
  BatchReport modulated;
  double seconds = 0.0;
};

Batches run_pair(const std::string& name, int agents, int trials)
{
  const Benchmark b = benchmark_by_name(name);
  const World& w = world(name);
  const AgentGenerator gen = [&](std::mt19937_64& rng)
  { return place_random_agents(w, agents, rng, b.regions); };

  SimConfig c;
  c.rng_seed = 0;
  Batches out;
  const auto t0 = Clock::now();
  c.method = Method::GrvoPlain;
  out.plain = batch(w, gen, c, trials, true);
  c.method = Method::GrvoModulated;
  out.modulated = batch(w, gen, c, trials, true);
  out.seconds = seconds_since(t0);
  return out;
}

void criterion_4_5(const Batches& dumbbell, const Batches& garage)
{
  const auto ok4 = [](const Batches& b)
  {
    return b.modulated.success_rate >= c4_min_modulated
      && b.plain.success_rate <= c4_max_plain && b.seconds < c4_budget_s;
  };
  report(4, ok4(dumbbell) && ok4(garage),
    fmt("dumbbell 4 agents x20: modulated %.2f plain %.2f (%.0f s); "
      "garage 2 agents x20: modulated %.2f plain %.2f (%.0f s)",
      dumbbell.modulated.success_rate, dumbbell.plain.success_rate,
      dumbbell.seconds, garage.modulated.success_rate,
      garage.plain.success_rate, garage.seconds));

  double traj = 0.0, ref = 0.0;
  int count = 0;
  for (const SimReport& r : dumbbell.modulated.runs)
  {
    if (!r.success)
      continue;
    for (const AgentReport& a : r.agents)
    {
      traj += a.path_length;
      ref += a.reference_length;
      ++count;
    }
  }
  const double mean_traj = count ? traj / count : oracle::inf;
  const double mean_ref = count ? ref / count : oracle::inf;
  const double ratio = count ? traj / ref : oracle::inf;
  report(5, count > 0 && std::isfinite(ratio)
      && ratio <= c5_max_ratio,
    fmt("dumbbell modulated: %d agents in successful runs, mean trajectory "
      "%.1f vs reference %.1f, ratio %.3f (max %.1f); plain successes %d",
      count, mean_traj, mean_ref, ratio, c5_max_ratio,
      dumbbell.plain.successes));
}

//==============================================================================
void criterion_6()
{
  const Benchmark b = bee_benchmark();
  const World& w = world("bee");
  SimConfig c;
  c.method = Method::GrvoModulated;
  c.max_frames = 1500;
  double sum = 0.0, worst = 0.0;
  int frames = 0;
  for (std::uint64_t seed = 0; seed < 2; ++seed)
  {
    std::mt19937_64 rng(seed);
    const SimReport r = run(w, place_random_agents(w, 15, rng, b.regions), c);
    sum += r.poi_overhead_ms * r.frames_used;
    frames += r.frames_used;
    worst = std::max(worst, r.max_poi_overhead_ms);
  }
  const double mean = frames ? sum / frames : oracle::inf;
  report(6, mean <= c6_budget_ms,
    fmt("bee 15 agents: mean POI time %.3f ms/frame over %d frames, "
      "max %.3f ms (budget %.0f)", mean, frames, worst, c6_budget_ms));
}

//==============================================================================
void criterion_7()
{
  const World& w = world("open");
  std::mt19937_64 rng(700);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
    std::numbers::pi);
  std::uniform_real_distribution<double> skew(-0.6, 0.6);
  std::uniform_real_distribution<double> offset(-4.0, 4.0);
  std::uniform_int_distribution<int> model(0, 2);
  const ModelKind kinds[] = {ModelKind::DiffDrive, ModelKind::Dubins,
    ModelKind::Truck};

  SimConfig c;
  c.method = Method::GrvoPlain;
  c.threads = 1;
  c.max_frames = 3000;
  const Vector2 centre(100, 100);
  int collisions = 0, runs = 0, reached = 0;
  while (runs < 200)
  {
    const double t = angle(rng);
    const double s = t + std::numbers::pi + skew(rng);
    const Vector2 da(std::cos(t), std::sin(t));
    const Vector2 db(std::cos(s), std::sin(s));
    const Vector2 n(-da.y(), da.x());
    const Vector2 a0 = centre - 60.0 * da + offset(rng) * n;
    const Vector2 b0 = centre - 60.0 * db;
    const std::vector<AgentState> agents = {
      make_agent(0, kinds[model(rng)], {a0.x(), a0.y(), t}, centre + 60.0 * da),
      make_agent(1, kinds[model(rng)], {b0.x(), b0.y(), s}, centre + 60.0 * db),
    };
    const SimReport r = run(w, agents, c);
    ++runs;
    collisions += r.collision_count;
    reached += r.success ? 1 : 0;
  }

  const World& corridor = world("corridor");
  const SimReport head_on = run(corridor, {
    make_agent(0, ModelKind::DiffDrive, {8, 4.5, 0}, {92, 4.5}),
    make_agent(1, ModelKind::DiffDrive, {92, 4.5, std::numbers::pi},
      {8, 4.5})}, c);

  report(7, collisions == 0 && head_on.outcome == Outcome::Deadlock
      && head_on.collision_count == 0,
    fmt("%d open-space encounters: %d collisions, %d all reached; "
      "corridor head-on outcome %s with %d collisions", runs, collisions,
      reached, std::string(to_string(head_on.outcome)).c_str(),
      head_on.collision_count));
}

//==============================================================================
void criterion_8()
{
  const Benchmark b = dumbbell_benchmark();
  const World& w = world("dumbbell");
  std::mt19937_64 rng(3);
  const std::vector<AgentState> agents = place_random_agents(w, 4, rng,
    b.regions);

  const auto dump = [&](int threads)
  {
    SimConfig c;
    c.method = Method::GrvoModulated;
    c.threads = threads;
    std::ostringstream out;
    write_trajectory_csv(run(w, agents, c), out);
    return out.str();
  };
  const std::string first = dump(1);
  const bool same_run = first == dump(1);
  const bool same_threads = first == dump(2) && first == dump(4);

  const AgentGenerator gen = [&](std::mt19937_64& r)
  { return place_random_agents(w, 4, r, b.regions); };
  SimConfig c;
  c.rng_seed = 11;
  c.threads = 1;
  const BatchReport x = batch(w, gen, c, 3, true);
  c.threads = 3;
  const BatchReport y = batch(w, gen, c, 3, true);
  bool same_batch = x.successes == y.successes;
  for (std::size_t k = 0; k < x.runs.size(); ++k)
  {
    std::ostringstream sx, sy;
    write_trajectory_csv(x.runs[k], sx);
    write_trajectory_csv(y.runs[k], sy);
    same_batch = same_batch && sx.str() == sy.str();
  }

  report(8, same_run && same_threads && same_batch,
    fmt("repeat %s, worker counts 1/2/4 %s, batch workers 1/3 %s "
      "(%zu bytes of trajectory)", same_run ? "identical" : "differ",
      same_threads ? "identical" : "differ",
      same_batch ? "identical" : "differ", first.size()));
}

} // anonymous namespace

//==============================================================================
int main()
{
  try
  {
    criterion_1();
    criterion_2();
    criterion_3();
    const Batches dumbbell = run_pair("dumbbell", 4, 20);
    const Batches garage = run_pair("garage", 2, 20);
    criterion_4_5(dumbbell, garage);
    criterion_6();
    criterion_7();
    criterion_8();
  }
  catch (const std::exception& e)
  {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
