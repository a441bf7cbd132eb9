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

#include <medax/benchmarks.hpp>
#include <medax/errors.hpp>
#include <medax/simulator.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

using namespace medax;

namespace {

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

std::vector<AgentState> head_on(double x0, double x1, double y)
{
  return {
    make_agent(0, ModelKind::DiffDrive, {x0, y, 0.0}, {x1, y}),
    make_agent(1, ModelKind::DiffDrive, {x1, y, std::numbers::pi}, {x0, y}),
  };
}

SimConfig config_for(Method m)
{
  SimConfig c;
  c.method = m;
  c.threads = 1;
  return c;
}

bool same_trajectory(const AgentReport& a, const AgentReport& b)
{
  if (a.trajectory.size() != b.trajectory.size())
    return false;
  for (std::size_t k = 0; k < a.trajectory.size(); ++k)
  {
    if (a.trajectory[k].pose != b.trajectory[k].pose
      || a.trajectory[k].trailer_angle != b.trajectory[k].trailer_angle
      || a.trajectory[k].velocity != b.trajectory[k].velocity)
      return false;
  }
  return true;
}

} // anonymous namespace

//==============================================================================
TEST_CASE("method and outcome names", "[sim]")
{
  CHECK(method_from_string(to_string(Method::GrvoPlain)) == Method::GrvoPlain);
  CHECK(method_from_string("grvo_modulated") == Method::GrvoModulated);
  CHECK_THROWS_AS(method_from_string("bridge"), LoadError);
  CHECK(to_string(Outcome::Deadlock) == "deadlock");
}

TEST_CASE("config validation", "[sim]")
{
  SimConfig c;
  CHECK_NOTHROW(validate(c));
  c.dt = 0.0;
  CHECK_THROWS_AS(validate(c), SetupError);
  c = SimConfig{};
  c.goal_tolerance = 1.0;
  CHECK_THROWS_AS(validate(c), SetupError);
  c = SimConfig{};
  c.deadlock_window = 0;
  CHECK_THROWS_AS(validate(c), SetupError);
  c = SimConfig{};
  c.threads = 3;
  CHECK(worker_count(c) == 3);
}

//==============================================================================
TEST_CASE("single agent drives down a corridor", "[sim]")
{
  const World& w = world("corridor");
  const std::vector<AgentState> agents = {
    make_agent(0, ModelKind::DiffDrive, {8, 4.5, 0.0}, {92, 4.5})};
  const SimReport r = run(w, agents, config_for(Method::GrvoPlain));
  REQUIRE(r.success);
  CHECK(r.outcome == Outcome::Success);
  const double straight = 92.0 - 8.0;
  CHECK(r.agents[0].path_length <= 1.05 * straight);
  CHECK(r.agents[0].path_length >= straight - 2.0 * 2.0);
}

TEST_CASE("dubins and truck agents reach their goals", "[sim]")
{
  const World& w = world("open");
  for (const ModelKind k : {ModelKind::Dubins, ModelKind::Truck})
  {
    const std::vector<AgentState> agents = {
      make_agent(0, k, {30, 100, 0.0}, {170, 120})};
    const SimReport r = run(w, agents, config_for(Method::GrvoModulated));
    INFO(to_string(k));
    CHECK(r.success);
  }
}

TEST_CASE("head-on in the dumbbell corridor", "[sim]")
{
  const World& w = world("dumbbell");
  const auto agents = head_on(30, 170, 50);

  const SimReport plain = run(w, agents, config_for(Method::GrvoPlain));
  CHECK(plain.outcome == Outcome::Deadlock);
  CHECK(plain.collision_count == 0);

  const SimReport mod = run(w, agents, config_for(Method::GrvoModulated));
  CHECK(mod.outcome == Outcome::Success);
  CHECK(mod.collision_count == 0);

  // One agent backs out into its chamber before the other passes.
  bool retreated = false;
  int modulated = 0;
  for (const AgentReport& a : mod.agents)
  {
    const double start = a.trajectory.front().pose.x();
    const double dir = start < 100.0 ? 1.0 : -1.0;
    double furthest = start;
    for (const TrajectorySample& s : a.trajectory)
    {
      furthest = dir > 0 ? std::max(furthest, s.pose.x())
                         : std::min(furthest, s.pose.x());
      if (dir * (furthest - s.pose.x()) > 10.0)
        retreated = true;
    }
    modulated += a.modulated_frames;
  }
  CHECK(retreated);
  CHECK(modulated > 0);
  for (const AgentReport& a : plain.agents)
    CHECK(a.modulated_frames == 0);
}

//==============================================================================
TEST_CASE("invalid starts are rejected", "[sim]")
{
  const World& w = world("dumbbell");
  const SimConfig c = config_for(Method::GrvoPlain);

  CHECK_THROWS_AS(run(w, {make_agent(0, ModelKind::DiffDrive, {100, 80, 0},
    {30, 50})}, c), SetupError);
  CHECK_THROWS_AS(run(w, {make_agent(0, ModelKind::DiffDrive, {100, 47, 0},
    {30, 50})}, c), SetupError);
  CHECK_THROWS_AS(run(w, {
    make_agent(0, ModelKind::DiffDrive, {30, 50, 0}, {170, 50}),
    make_agent(1, ModelKind::DiffDrive, {32, 50, 0}, {170, 60})}, c),
    SetupError);
  CHECK_THROWS_AS(run(w, {
    make_agent(3, ModelKind::DiffDrive, {30, 50, 0}, {170, 50}),
    make_agent(3, ModelKind::DiffDrive, {30, 70, 0}, {170, 60})}, c),
    SetupError);
}

TEST_CASE("reached agents are frozen and invisible", "[sim]")
{
  const World& w = world("corridor");
  // Agent 1 starts on its goal in the middle of the corridor.
  const std::vector<AgentState> agents = {
    make_agent(0, ModelKind::DiffDrive, {8, 4.5, 0.0}, {92, 4.5}),
    make_agent(1, ModelKind::DiffDrive, {50, 4.5, 0.0}, {50, 4.5}),
  };
  const SimReport r = run(w, agents, config_for(Method::GrvoPlain));
  CHECK(r.success);
  CHECK(r.agents[1].reached_frame == 0);
  for (const TrajectorySample& s : r.agents[1].trajectory)
    CHECK(s.pose == r.agents[1].trajectory.front().pose);
}

TEST_CASE("reported metrics are consistent", "[sim]")
{
  const World& w = world("dumbbell");
  const SimReport r =
    run(w, head_on(30, 170, 50), config_for(Method::GrvoModulated));
  CHECK(r.success == (r.collision_count == 0
    && std::all_of(r.agents.begin(), r.agents.end(),
      [](const AgentReport& a) { return a.reached; })));

  std::ostringstream csv;
  write_trajectory_csv(r, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "frame,agent_id,x,y,theta,trailer_angle,vx,vy");

  std::map<int, std::vector<Vector2>> points;
  while (std::getline(in, line))
  {
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(fields, cell, ','))
      v.push_back(std::stod(cell));
    REQUIRE(v.size() == 8);
    points[static_cast<int>(v[1])].emplace_back(v[2], v[3]);
  }
  for (const AgentReport& a : r.agents)
  {
    const auto& p = points[a.id];
    REQUIRE(p.size() == a.trajectory.size());
    double length = 0.0;
    for (std::size_t k = 1; k < p.size(); ++k)
      length += (p[k] - p[k - 1]).norm();
    CHECK(length == Catch::Approx(a.path_length).epsilon(1e-12));

    if (a.reached)
    {
      const Eigen::Vector3d last = a.trajectory[a.reached_frame].pose;
      for (std::size_t k = a.reached_frame; k < a.trajectory.size(); ++k)
        CHECK(a.trajectory[k].pose == last);
    }
  }
}

TEST_CASE("agent order does not change trajectories", "[sim]")
{
  const World& w = world("bee");
  std::mt19937_64 rng(5);
  std::vector<AgentState> agents =
    place_random_agents(w, 8, rng, bee_benchmark().regions);
  SimConfig c = config_for(Method::GrvoModulated);
  c.max_frames = 600;
  const SimReport forward = run(w, agents, c);
  std::reverse(agents.begin(), agents.end());
  const SimReport backward = run(w, agents, c);
  REQUIRE(forward.agents.size() == backward.agents.size());
  CHECK(forward.frames_used == backward.frames_used);
  for (const AgentReport& a : forward.agents)
  {
    const auto it = std::find_if(backward.agents.begin(),
      backward.agents.end(), [&](const AgentReport& b) { return b.id == a.id; });
    REQUIRE(it != backward.agents.end());
    CHECK(same_trajectory(a, *it));
  }
}

TEST_CASE("worker count does not change trajectories", "[sim]")
{
  const World& w = world("bee");
  std::mt19937_64 rng(9);
  const std::vector<AgentState> agents =
    place_random_agents(w, 12, rng, bee_benchmark().regions);
  SimConfig c = config_for(Method::GrvoModulated);
  c.max_frames = 500;
  const SimReport one = run(w, agents, c);
  c.threads = 4;
  const SimReport four = run(w, agents, c);
  for (std::size_t k = 0; k < one.agents.size(); ++k)
    CHECK(same_trajectory(one.agents[k], four.agents[k]));
}

//==============================================================================
TEST_CASE("random placement", "[sim][placement]")
{
  const World& bee = world("bee");
  const auto regions = bee_benchmark().regions;

  std::mt19937_64 rng(13);
  CHECK(place_random_agents(bee, 0, rng, regions).empty());

  const auto agents = place_random_agents(bee, 15, rng, regions);
  REQUIRE(agents.size() == 15);
  for (std::size_t i = 0; i < agents.size(); ++i)
  {
    const AgentState& a = agents[i];
    CHECK(bee.env.distance_to_boundary(a.position()) >= a.bounding_radius());
    CHECK_FALSE(collide_env(footprint(a), bee.env));
    const SpawnRegion& reg = regions[i % regions.size()];
    CHECK(reg.start.contains(a.position()));
    CHECK(reg.goal.contains(a.goal));
    for (std::size_t j = i + 1; j < agents.size(); ++j)
      CHECK_FALSE(collide(footprint(a), footprint(agents[j])));
  }

  std::mt19937_64 r1(21), r2(21);
  const auto p1 = place_random_agents(bee, 6, r1, regions);
  const auto p2 = place_random_agents(bee, 6, r2, regions);
  for (std::size_t k = 0; k < p1.size(); ++k)
  {
    CHECK(p1[k].pose == p2[k].pose);
    CHECK(p1[k].goal == p2[k].goal);
  }

  const World& open = world("open");
  const auto one = place_random_agents(open, 1, rng,
    {{Eigen::AlignedBox2d(Vector2(90, 90), Vector2(110, 110)),
      Eigen::AlignedBox2d(Vector2(90, 90), Vector2(110, 110))}});
  REQUIRE(one.size() == 1);
  CHECK(open.env.distance_to_boundary(one[0].position()) > 80.0);

  const std::vector<SpawnRegion> tiny = {
    {Eigen::AlignedBox2d(Vector2(98, 98), Vector2(102, 102)),
     Eigen::AlignedBox2d(Vector2(98, 98), Vector2(102, 102))}};
  PlacementOptions quick;
  quick.max_attempts = 200;
  CHECK_THROWS_AS(place_random_agents(open, 5, rng, tiny, quick), SetupError);
}

//==============================================================================
TEST_CASE("batch aggregates seeded trials", "[sim][batch]")
{
  const World& w = world("garage");
  const auto regions = garage_benchmark().regions;
  const AgentGenerator gen = [&](std::mt19937_64& rng)
  { return place_random_agents(w, 2, rng, regions); };

  SimConfig c = config_for(Method::GrvoModulated);
  c.rng_seed = 4;
  const BatchReport single = batch(w, gen, c, 1, true);
  std::mt19937_64 rng(4);
  const SimReport direct = run(w, gen(rng), c);
  REQUIRE(single.runs.size() == 1);
  CHECK(single.successes == (direct.success ? 1 : 0));
  for (std::size_t k = 0; k < direct.agents.size(); ++k)
    CHECK(same_trajectory(single.runs[0].agents[k], direct.agents[k]));

  const BatchReport a = batch(w, gen, c, 4, true);
  c.threads = 4;
  const BatchReport b = batch(w, gen, c, 4, true);
  CHECK(a.successes == b.successes);
  CHECK(a.mean_path_length == b.mean_path_length);
  CHECK(a.success_rate == Catch::Approx(a.successes / 4.0));
  CHECK(a.successes + a.collisions + a.deadlocks + a.timeouts == 4);
  for (std::size_t k = 0; k < a.runs.size(); ++k)
  {
    for (std::size_t j = 0; j < a.runs[k].agents.size(); ++j)
      CHECK(same_trajectory(a.runs[k].agents[j], b.runs[k].agents[j]));
  }
}

TEST_CASE("POI overhead is only counted when modulating", "[sim]")
{
  const World& w = world("dumbbell");
  const SimReport plain = run(w, head_on(30, 170, 50),
    config_for(Method::GrvoPlain));
  CHECK(plain.poi_overhead_ms == 0.0);

  SimConfig c = config_for(Method::GrvoModulated);
  c.record_pois = true;
  const SimReport mod = run(w, head_on(30, 170, 50), c);
  CHECK(mod.poi_overhead_ms > 0.0);
  CHECK(mod.max_poi_overhead_ms >= mod.poi_overhead_ms);
  CHECK_FALSE(mod.pois.empty());

  std::ostringstream csv;
  write_poi_csv(mod, csv);
  CHECK(csv.str().rfind("frame,agent,poi_x,poi_y,n,shifted\n", 0) == 0);
}

TEST_CASE("open-space encounters keep bodies apart", "[sim][safety]")
{
  const World& w = world("open");
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
    std::numbers::pi);
  std::uniform_real_distribution<double> crossing(-1.6, 1.6);
  SimConfig c = config_for(Method::GrvoPlain);
  c.max_frames = 2000;
  const Vector2 centre(100, 100);
  const double r = BodySize{}.bounding_radius();

  double closest = std::numeric_limits<double>::infinity();
  for (int seed = 0; seed < 200; ++seed)
  {
    const double t = angle(rng);
    const double s = t + std::numbers::pi + crossing(rng);
    const Vector2 da(std::cos(t), std::sin(t));
    const Vector2 db(std::cos(s), std::sin(s));
    const Vector2 a0 = centre - 60.0 * da;
    const Vector2 b0 = centre - 60.0 * db;
    const SimReport rep = run(w, {
      make_agent(0, ModelKind::DiffDrive, {a0.x(), a0.y(), t},
        centre + 60.0 * da),
      make_agent(1, ModelKind::DiffDrive, {b0.x(), b0.y(), s},
        centre + 60.0 * db)}, c);
    CHECK(rep.collision_count == 0);
    const auto& ta = rep.agents[0].trajectory;
    const auto& tb = rep.agents[1].trajectory;
    for (std::size_t k = 0; k < ta.size(); ++k)
    {
      // Reached agents leave the encounter.
      if ((rep.agents[0].reached && static_cast<int>(k)
          > rep.agents[0].reached_frame)
        || (rep.agents[1].reached && static_cast<int>(k)
          > rep.agents[1].reached_frame))
        break;
      closest = std::min(closest,
        (ta[k].pose.head<2>() - tb[k].pose.head<2>()).norm());
    }
  }
  CHECK(closest >= 2.0 * r);
}
