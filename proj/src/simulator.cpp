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

#include <medax/simulator.hpp>
#include <medax/errors.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

namespace medax {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
    .count();
}

//==============================================================================
/// Runs fn(i) for i in [0, count) on up to `workers` threads.
template<typename Fn>
void parallel_for(int workers, std::size_t count, const Fn& fn)
{
  if (workers <= 1 || count <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  const auto body = [&]()
  {
    for (std::size_t i = next++; i < count; i = next++)
      fn(i);
  };

  const std::size_t n = std::min<std::size_t>(workers, count);
  std::vector<std::jthread> pool;
  pool.reserve(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    pool.emplace_back(body);
  body();
}

double footprint_extent(const AgentState& a)
{
  double r = 0.0;
  for (const auto& box : footprint(a).boxes)
  {
    for (const Vector2& c : box)
      r = std::max(r, (c - a.position()).norm());
  }
  return r;
}

} // anonymous namespace

//==============================================================================
std::string_view to_string(Method method)
{
  switch (method)
  {
    case Method::GrvoPlain: return "grvo_plain";
    case Method::GrvoModulated: return "grvo_modulated";
  }
  return "unknown";
}

//==============================================================================
Method method_from_string(std::string_view name)
{
  if (name == "grvo_plain")
    return Method::GrvoPlain;
  if (name == "grvo_modulated")
    return Method::GrvoModulated;
  throw LoadError("unknown method '" + std::string(name) + "'");
}

//==============================================================================
std::string_view to_string(Outcome outcome)
{
  switch (outcome)
  {
    case Outcome::Success: return "success";
    case Outcome::Collision: return "collision";
    case Outcome::Deadlock: return "deadlock";
    case Outcome::Timeout: return "timeout";
  }
  return "unknown";
}

//==============================================================================
World build_world(PolyEnvironment env, double cell_size,
  const PoiParams& poi, const SkeletonOptions& options, double r_agent)
{
  const auto start = Clock::now();
  OccupancyGrid grid = rasterize(env, cell_size);
  SkeletonGraph skeleton = extract_skeleton(grid, options);
  ShiftTable table = build_shift_table(skeleton, poi.n_max, r_agent, poi);
  World w{std::move(env), std::move(skeleton), std::move(table), 0.0};
  w.precompute_ms = elapsed_ms(start);
  return w;
}

//==============================================================================
void validate(const SimConfig& c)
{
  if (!(c.dt > 0.0) || c.max_frames <= 0 || !(c.goal_tolerance > 0.0)
    || c.deadlock_window <= 0 || !(c.deadlock_displacement > 0.0))
  {
    throw SetupError("simulation parameters must be positive");
  }
  if (c.goal_tolerance < 0.5 * BodySize{}.bounding_radius())
    throw SetupError("goal_tolerance must be at least half the agent radius");
}

//==============================================================================
int worker_count(const SimConfig& config)
{
  if (config.threads > 0)
    return config.threads;
  if (const char* env = std::getenv("MEDAX_THREADS"))
  {
    const int n = std::atoi(env);
    if (n > 0)
      return n;
  }
  return 1;
}

//==============================================================================
SimReport run(const World& world, std::vector<AgentState> agents,
  const SimConfig& config)
{
  validate(config);
  const SkeletonGraph& g = world.skeleton;
  const PolyEnvironment& env = world.env;
  const std::size_t count = agents.size();

  NavParams nav = config.nav;
  nav.dt = config.dt;

  std::vector<ReferenceTrajectory> refs(count);
  std::vector<double> extent(count);
  SimReport report;
  report.agents.resize(count);

  for (std::size_t i = 0; i < count; ++i)
  {
    AgentState& a = agents[i];
    a.prev_pos = a.position();
    const std::string who = "agent " + std::to_string(a.id);
    if (!env.contains(a.position()))
      throw SetupError(who + " starts outside the freespace");
    if (collide_env(footprint(a), env))
      throw SetupError(who + " starts in contact with an obstacle");
    try
    {
      refs[i] = make_reference(g, a.position(), a.goal);
    }
    catch (const std::runtime_error& e)
    {
      throw SetupError(who + ": " + e.what());
    }
    extent[i] = footprint_extent(a);

    const SkeletonPath& path = refs[i].path;
    AgentReport& r = report.agents[i];
    r.id = a.id;
    r.model = a.model;
    r.reference_length = (a.position() - path.points.front()).norm()
      + path.length() + (path.points.back() - a.goal).norm();
    r.trajectory.push_back({0, a.pose, a.trailer_angle, Vector2::Zero()});
  }

  for (std::size_t i = 0; i < count; ++i)
  {
    for (std::size_t j = i + 1; j < count; ++j)
    {
      if (agents[i].id == agents[j].id)
        throw SetupError("duplicate agent id " + std::to_string(agents[i].id));
      if (collide(footprint(agents[i]), footprint(agents[j])))
      {
        throw SetupError("agents " + std::to_string(agents[i].id) + " and "
          + std::to_string(agents[j].id) + " start in collision");
      }
    }
  }

  const int workers = worker_count(config);
  const bool modulated = config.method == Method::GrvoModulated;

  std::vector<std::uint8_t> finished(count, 0);
  std::vector<std::uint8_t> redirected(count, 0);
  std::vector<std::uint8_t> next_redirected(count, 0);
  std::vector<ControlInput> controls(count);
  std::vector<double> poi_ms(count, 0.0);
  std::vector<std::vector<Poi>> frame_pois(count);

  for (std::size_t i = 0; i < count; ++i)
  {
    if ((agents[i].position() - agents[i].goal).norm() <= config.goal_tolerance)
    {
      finished[i] = 1;
      report.agents[i].reached = true;
      report.agents[i].reached_frame = 0;
    }
  }

  double frame_ms_total = 0.0;
  double poi_ms_total = 0.0;
  int frame = 0;
  report.outcome = Outcome::Timeout;

  const auto all_finished = [&]()
  {
    return std::all_of(finished.begin(), finished.end(),
      [](std::uint8_t f) { return f != 0; });
  };

  while (!all_finished() && frame < config.max_frames)
  {
    ++frame;
    const auto frame_start = Clock::now();
    const std::vector<AgentState> snapshot = agents;

    parallel_for(workers, count, [&](std::size_t i)
    {
      next_redirected[i] = 0;
      poi_ms[i] = 0.0;
      frame_pois[i].clear();
      if (finished[i])
        return;

      const AgentState& self = snapshot[i];
      std::vector<AgentState> neighbors;
      for (std::size_t j = 0; j < count; ++j)
      {
        if (j == i || finished[j])
          continue;
        if ((snapshot[j].position() - self.position()).norm()
          <= self.sensing_radius)
        {
          neighbors.push_back(snapshot[j]);
        }
      }
      // Storage order must not leak into the decision.
      std::sort(neighbors.begin(), neighbors.end(),
        [](const AgentState& l, const AgentState& r) { return l.id < r.id; });

      localize(refs[i], g, self.position(), redirected[i] != 0, nav);
      const Vector2 v_star = desired_velocity(self, refs[i], nav);
      Vector2 v = v_star;

      if (modulated)
      {
        const auto t0 = Clock::now();
        PoiPlan plan = plan_pois(self, v_star, neighbors, g, config.poi,
          config.dt, &world.shift_table);
        poi_ms[i] = elapsed_ms(t0);
        v = plan.velocity;
        next_redirected[i] = plan.modulated ? 1 : 0;
        if (config.record_pois)
          frame_pois[i] = std::move(plan.pois);
      }

      controls[i] = grvo(v, self, neighbors, env, nav).control;
    });

    double frame_poi = 0.0;
    for (std::size_t i = 0; i < count; ++i)
    {
      frame_poi += poi_ms[i];
      if (!finished[i])
      {
        agents[i] = step(agents[i], controls[i], config.dt).state;
        if (next_redirected[i])
          ++report.agents[i].modulated_frames;
      }
      if (config.record_pois)
      {
        for (const Poi& p : frame_pois[i])
        {
          report.pois.push_back(
            {frame, agents[i].id, p.position, p.n, p.shifted});
        }
      }
    }
    redirected.swap(next_redirected);

    // Collisions between agents still driving, and with the boundary.
    int collisions = 0;
    for (std::size_t i = 0; i < count; ++i)
    {
      if (finished[i])
        continue;
      const Footprint fi = footprint(agents[i]);
      if (collide_env(fi, env))
        ++collisions;
      for (std::size_t j = i + 1; j < count; ++j)
      {
        if (finished[j])
          continue;
        const double d = (agents[i].position() - agents[j].position()).norm();
        if (d > extent[i] + extent[j])
          continue;
        if (collide(fi, footprint(agents[j])))
          ++collisions;
      }
    }

    for (std::size_t i = 0; i < count; ++i)
    {
      AgentReport& r = report.agents[i];
      const AgentState& a = agents[i];
      const Vector2 vel = finished[i]
        ? Vector2::Zero()
        : a.finite_difference_velocity(config.dt);
      r.trajectory.push_back({frame, a.pose, a.trailer_angle, vel});

      if (!finished[i]
        && (a.position() - a.goal).norm() <= config.goal_tolerance)
      {
        finished[i] = 1;
        r.reached = true;
        r.reached_frame = frame;
      }
    }

    frame_ms_total += elapsed_ms(frame_start);
    poi_ms_total += frame_poi;
    report.max_poi_overhead_ms =
      std::max(report.max_poi_overhead_ms, frame_poi);

    if (collisions > 0)
    {
      report.collision_count = collisions;
      report.outcome = Outcome::Collision;
      break;
    }

    if (frame >= config.deadlock_window && !all_finished())
    {
      bool stuck = true;
      for (std::size_t i = 0; i < count && stuck; ++i)
      {
        if (finished[i])
          continue;
        const auto& traj = report.agents[i].trajectory;
        const auto& then = traj[traj.size() - 1 - config.deadlock_window];
        const double moved =
          (agents[i].position() - then.pose.head<2>()).norm();
        stuck = moved < config.deadlock_displacement;
      }
      if (stuck)
      {
        report.outcome = Outcome::Deadlock;
        break;
      }
    }
  }

  if (report.outcome == Outcome::Timeout && all_finished())
    report.outcome = Outcome::Success;

  report.frames_used = frame;
  report.success = report.outcome == Outcome::Success;
  if (frame > 0)
  {
    report.mean_frame_ms = frame_ms_total / frame;
    report.poi_overhead_ms = poi_ms_total / frame;
  }

  for (AgentReport& r : report.agents)
  {
    double length = 0.0;
    for (std::size_t k = 1; k < r.trajectory.size(); ++k)
    {
      length += (r.trajectory[k].pose.head<2>()
        - r.trajectory[k - 1].pose.head<2>()).norm();
    }
    r.path_length = length;
  }
  return report;
}

//==============================================================================
std::vector<AgentState> place_random_agents(const World& world, int n,
  std::mt19937_64& rng, const std::vector<SpawnRegion>& regions,
  const PlacementOptions& options)
{
  std::vector<AgentState> agents;
  if (n <= 0)
    return agents;
  if (regions.empty())
    throw SetupError("no spawn regions");

  const PolyEnvironment& env = world.env;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto sample_in = [&](const Eigen::AlignedBox2d& box)
  {
    const double x = box.min().x() + unit(rng) * box.sizes().x();
    const double y = box.min().y() + unit(rng) * box.sizes().y();
    return Vector2(x, y);
  };

  for (int k = 0; k < n; ++k)
  {
    const SpawnRegion& region = regions[k % regions.size()];
    bool placed = false;

    for (int attempt = 0; attempt < options.max_attempts && !placed; ++attempt)
    {
      const Vector2 p = sample_in(region.start);
      const double heading = (2.0 * unit(rng) - 1.0) * std::numbers::pi;
      AgentState a = make_agent(
        k, options.model, Eigen::Vector3d(p.x(), p.y(), heading), p);
      if (!env.contains(p) || env.distance_to_boundary(p) < a.bounding_radius())
        continue;
      const Footprint fp = footprint(a);
      if (collide_env(fp, env))
        continue;

      bool clear = true;
      for (const AgentState& other : agents)
      {
        if ((other.position() - p).norm() < options.start_spacing
          || collide(fp, footprint(other)))
        {
          clear = false;
          break;
        }
      }
      if (!clear)
        continue;

      for (int goal_attempt = 0; goal_attempt < options.max_attempts;
        ++goal_attempt)
      {
        const Vector2 q = sample_in(region.goal);
        if (!env.contains(q)
          || env.distance_to_boundary(q) < a.bounding_radius())
        {
          continue;
        }
        bool spaced = true;
        for (const AgentState& other : agents)
        {
          if ((other.goal - q).norm() < options.goal_spacing)
          {
            spaced = false;
            break;
          }
        }
        if (!spaced)
          continue;

        a.goal = q;
        agents.push_back(a);
        placed = true;
        break;
      }
    }

    if (!placed)
    {
      throw SetupError("could not place agent " + std::to_string(k)
        + " after " + std::to_string(options.max_attempts) + " attempts");
    }
  }
  return agents;
}

//==============================================================================
BatchReport batch(const World& world, const AgentGenerator& generator,
  const SimConfig& config, int trials, bool keep_runs)
{
  BatchReport out;
  out.method = config.method;
  out.trials = std::max(trials, 0);

  std::vector<SimReport> runs(out.trials);
  std::mutex error_mutex;
  std::exception_ptr error;

  parallel_for(worker_count(config), runs.size(), [&](std::size_t k)
  {
    try
    {
      SimConfig c = config;
      c.rng_seed = config.rng_seed + k;
      c.threads = 1;
      std::mt19937_64 rng(c.rng_seed);
      runs[k] = run(world, generator(rng), c);
    }
    catch (...)
    {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error)
        error = std::current_exception();
    }
  });
  if (error)
    std::rethrow_exception(error);

  double length = 0.0;
  double reference = 0.0;
  double fps = 0.0;
  double frame_ms = 0.0;
  double poi_ms = 0.0;
  double frames = 0.0;
  for (const SimReport& r : runs)
  {
    out.successes += r.success ? 1 : 0;
    out.collisions += r.outcome == Outcome::Collision ? 1 : 0;
    out.deadlocks += r.outcome == Outcome::Deadlock ? 1 : 0;
    out.timeouts += r.outcome == Outcome::Timeout ? 1 : 0;
    for (const AgentReport& a : r.agents)
    {
      if (!a.reached)
        continue;
      length += a.path_length;
      reference += a.reference_length;
      ++out.reached_agents;
    }
    if (r.mean_frame_ms > 0.0)
      fps += 1000.0 / r.mean_frame_ms;
    frame_ms += r.mean_frame_ms;
    poi_ms += r.poi_overhead_ms;
    frames += r.frames_used;
  }

  if (out.trials > 0)
  {
    out.success_rate = static_cast<double>(out.successes) / out.trials;
    out.mean_fps = fps / out.trials;
    out.mean_frame_ms = frame_ms / out.trials;
    out.mean_poi_overhead_ms = poi_ms / out.trials;
    out.mean_frames = frames / out.trials;
  }
  if (out.reached_agents > 0)
  {
    out.mean_path_length = length / out.reached_agents;
    out.mean_reference_length = reference / out.reached_agents;
  }

  if (keep_runs)
    out.runs = std::move(runs);
  return out;
}

//==============================================================================
void write_trajectory_csv(const SimReport& report, std::ostream& out)
{
  out << "frame,agent_id,x,y,theta,trailer_angle,vx,vy\n";
  const auto old_precision = out.precision(17);

  std::size_t frames = 0;
  for (const AgentReport& a : report.agents)
    frames = std::max(frames, a.trajectory.size());

  for (std::size_t f = 0; f < frames; ++f)
  {
    for (const AgentReport& a : report.agents)
    {
      if (f >= a.trajectory.size())
        continue;
      const TrajectorySample& s = a.trajectory[f];
      out << s.frame << ',' << a.id << ',' << s.pose.x() << ',' << s.pose.y()
          << ',' << s.pose.z() << ',' << s.trailer_angle << ','
          << s.velocity.x() << ',' << s.velocity.y() << '\n';
    }
  }
  out.precision(old_precision);
}

//==============================================================================
void write_poi_csv(const SimReport& report, std::ostream& out)
{
  out << "frame,agent,poi_x,poi_y,n,shifted\n";
  const auto old_precision = out.precision(17);
  for (const PoiRecord& p : report.pois)
  {
    out << p.frame << ',' << p.agent << ',' << p.position.x() << ','
        << p.position.y() << ',' << p.n << ',' << (p.shifted ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

} // namespace medax
