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

#include <medax/scenario.hpp>
#include <medax/errors.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace medax {

namespace {

using nlohmann::json;

//==============================================================================
void require(bool ok, const std::string& what)
{
  if (!ok)
    throw LoadError(what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
  const std::string& where)
{
  for (const auto& [key, value] : obj.items())
  {
    bool known = false;
    for (const char* a : allowed)
      known = known || key == a;
    require(known, "unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& what)
{
  require(j.is_number(), what + " must be a number");
  return j.get<double>();
}

Vector2 point(const json& j, const std::string& what)
{
  require(j.is_array() && j.size() == 2, what + " must be [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

Polygon<double> polygon(const json& j, const std::string& what)
{
  require(j.is_array(), what + " must be a list of points");
  Polygon<double> poly;
  for (const json& p : j)
    poly.push_back(point(p, what));
  return poly;
}

Eigen::AlignedBox2d rectangle(const json& j, const std::string& what)
{
  require(j.is_array() && j.size() == 4, what + " must be [x0, y0, x1, y1]");
  const Vector2 a(number(j[0], what), number(j[1], what));
  const Vector2 b(number(j[2], what), number(j[3], what));
  require(a.x() <= b.x() && a.y() <= b.y(), what + " has min above max");
  return Eigen::AlignedBox2d(a, b);
}

//==============================================================================
using Setter = std::function<void(SimConfig&, const json&)>;

const std::map<std::string, Setter>& config_setters()
{
  static const std::map<std::string, Setter> setters = {
    {"dt", [](SimConfig& c, const json& v) { c.dt = number(v, "dt"); }},
    {"max_frames", [](SimConfig& c, const json& v)
      { c.max_frames = static_cast<int>(number(v, "max_frames")); }},
    {"goal_tolerance", [](SimConfig& c, const json& v)
      { c.goal_tolerance = number(v, "goal_tolerance"); }},
    {"deadlock_window", [](SimConfig& c, const json& v)
      { c.deadlock_window = static_cast<int>(number(v, "deadlock_window")); }},
    {"deadlock_displacement", [](SimConfig& c, const json& v)
      { c.deadlock_displacement = number(v, "deadlock_displacement"); }},
    {"seed", [](SimConfig& c, const json& v)
      {
        require(v.is_number_unsigned() || v.is_number_integer(),
          "seed must be an integer");
        c.rng_seed = v.get<std::uint64_t>();
      }},
    {"threads", [](SimConfig& c, const json& v)
      { c.threads = static_cast<int>(number(v, "threads")); }},
    {"tau", [](SimConfig& c, const json& v)
      { c.nav.tau_agent = number(v, "tau"); }},
    {"tau_obstacle", [](SimConfig& c, const json& v)
      { c.nav.tau_obstacle = number(v, "tau_obstacle"); }},
    {"eps_track", [](SimConfig& c, const json& v)
      { c.nav.eps_track = number(v, "eps_track"); }},
    {"w_follow", [](SimConfig& c, const json& v)
      { c.nav.w_follow = number(v, "w_follow"); }},
    {"w_bias", [](SimConfig& c, const json& v)
      { c.nav.w_bias = number(v, "w_bias"); }},
    {"effective_offset", [](SimConfig& c, const json& v)
      { c.nav.effective_offset_fraction = number(v, "effective_offset"); }},
    {"max_obstacle_segments", [](SimConfig& c, const json& v)
      {
        c.nav.max_obstacle_segments =
          static_cast<std::size_t>(number(v, "max_obstacle_segments"));
      }},
    {"tie_break_rotation", [](SimConfig& c, const json& v)
      { c.nav.tie_break_rotation = number(v, "tie_break_rotation"); }},
    {"eta", [](SimConfig& c, const json& v)
      { c.poi.eta = number(v, "eta"); }},
    {"epsilon", [](SimConfig& c, const json& v)
      { c.poi.epsilon = number(v, "epsilon"); }},
    {"v_min_fraction", [](SimConfig& c, const json& v)
      { c.poi.v_min_fraction = number(v, "v_min_fraction"); }},
    {"n_max", [](SimConfig& c, const json& v)
      { c.poi.n_max = static_cast<int>(number(v, "n_max")); }},
    {"snap_tolerance", [](SimConfig& c, const json& v)
      { c.poi.snap_tolerance = number(v, "snap_tolerance"); }},
    {"use_shift_table", [](SimConfig& c, const json& v)
      {
        require(v.is_boolean(), "use_shift_table must be a boolean");
        c.poi.use_shift_table = v.get<bool>();
      }},
  };
  return setters;
}

//==============================================================================
AgentState parse_agent(const json& j, int id)
{
  const std::string where = "agent " + std::to_string(id);
  require(j.is_object(), where + " must be an object");
  check_keys(j, {"model", "start", "goal", "v_max", "omega_max", "a_max",
    "kappa_max", "sensing_radius"}, where);
  require(j.contains("start") && j.contains("goal"),
    where + " needs start and goal");

  const ModelKind model = j.contains("model")
    ? model_from_string(j["model"].get<std::string>())
    : ModelKind::DiffDrive;

  const json& s = j["start"];
  require(s.is_array() && (s.size() == 2 || s.size() == 3),
    where + " start must be [x, y] or [x, y, theta]");
  const Eigen::Vector3d start(number(s[0], where), number(s[1], where),
    s.size() == 3 ? number(s[2], where) : 0.0);

  AgentState a = make_agent(id, model, start, point(j["goal"], where));
  if (j.contains("v_max"))
    a.limits.v_max = number(j["v_max"], "v_max");
  if (j.contains("omega_max"))
    a.limits.omega_max = number(j["omega_max"], "omega_max");
  if (j.contains("a_max"))
    a.limits.a_max = number(j["a_max"], "a_max");
  if (j.contains("kappa_max"))
    a.limits.kappa_max = number(j["kappa_max"], "kappa_max");
  if (j.contains("sensing_radius"))
    a.sensing_radius = number(j["sensing_radius"], "sensing_radius");

  require(a.limits.v_max > 0.0 && a.limits.omega_max > 0.0
    && a.limits.a_max > 0.0 && a.limits.kappa_max > 0.0
    && a.sensing_radius > 0.0, where + " limits must be positive");
  return a;
}

} // anonymous namespace

//==============================================================================
std::vector<AgentState> Scenario::make_agents(
  const World& world, std::uint64_t seed) const
{
  if (!agents.empty())
    return agents;
  std::mt19937_64 rng(seed);
  PlacementOptions options;
  options.model = spawn_model;
  return place_random_agents(world, spawn_count, rng, map.regions, options);
}

//==============================================================================
Scenario parse_scenario(const std::string& text, const std::string& name)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error& e)
  {
    throw LoadError("malformed scenario '" + name + "': " + e.what());
  }

  try
  {
    require(j.is_object(), "scenario must be a JSON object");
    check_keys(j, {"name", "map", "benchmark", "cell_size", "agents", "spawn",
      "config", "methods"}, "scenario");
    require(j.contains("map") != j.contains("benchmark"),
      "scenario needs exactly one of 'map' or 'benchmark'");

    std::optional<Benchmark> map;
    if (j.contains("benchmark"))
    {
      map = benchmark_by_name(j["benchmark"].get<std::string>());
    }
    else
    {
      const json& m = j["map"];
      require(m.is_object() && m.contains("outer"), "map needs 'outer'");
      check_keys(m, {"outer", "holes"}, "map");
      std::vector<Polygon<double>> holes;
      if (m.contains("holes"))
      {
        require(m["holes"].is_array(), "holes must be a list");
        for (const json& h : m["holes"])
          holes.push_back(polygon(h, "hole"));
      }
      PolyEnvironment env(polygon(m["outer"], "outer"), std::move(holes));
      const double h = default_cell_size(env);
      map = Benchmark{"custom", "", std::move(env), h, {}, 1};
    }

    Scenario s{j.value("name", name), std::move(*map), {}, 0,
      ModelKind::DiffDrive, {}, {}};

    if (j.contains("cell_size"))
    {
      s.map.cell_size = number(j["cell_size"], "cell_size");
      require(s.map.cell_size > 0.0, "cell_size must be positive");
    }

    if (j.contains("agents"))
    {
      require(j["agents"].is_array(), "agents must be a list");
      int id = 0;
      for (const json& a : j["agents"])
        s.agents.push_back(parse_agent(a, id++));
    }

    if (j.contains("spawn"))
    {
      const json& sp = j["spawn"];
      require(sp.is_object(), "spawn must be an object");
      check_keys(sp, {"count", "model", "regions"}, "spawn");
      s.spawn_count = static_cast<int>(number(sp.value("count", json(0)),
        "spawn count"));
      if (sp.contains("model"))
        s.spawn_model = model_from_string(sp["model"].get<std::string>());
      if (sp.contains("regions"))
      {
        s.map.regions.clear();
        require(sp["regions"].is_array(), "regions must be a list");
        for (const json& r : sp["regions"])
        {
          require(r.is_object() && r.contains("start") && r.contains("goal"),
            "region needs start and goal");
          s.map.regions.push_back(
            {rectangle(r["start"], "region start"),
              rectangle(r["goal"], "region goal")});
        }
      }
    }

    require(!s.agents.empty() || s.spawn_count > 0,
      "scenario needs at least one agent");
    require(s.agents.empty() || s.spawn_count == 0,
      "scenario must not combine explicit agents and spawn");
    require(s.agents.size() > 0 || !s.map.regions.empty(),
      "spawn needs regions");

    if (j.contains("config"))
    {
      const json& c = j["config"];
      require(c.is_object(), "config must be an object");
      for (const auto& [key, value] : c.items())
      {
        const auto it = config_setters().find(key);
        require(it != config_setters().end(),
          "unknown key '" + key + "' in config");
        it->second(s.config, value);
      }
    }

    if (j.contains("methods"))
    {
      require(j["methods"].is_array(), "methods must be a list");
      for (const json& m : j["methods"])
        s.methods.push_back(method_from_string(m.get<std::string>()));
    }
    if (s.methods.empty())
      s.methods = {Method::GrvoPlain, Method::GrvoModulated};
    s.config.method = s.methods.back();

    try
    {
      validate(s.config);
    }
    catch (const SetupError& e)
    {
      throw LoadError(e.what());
    }
    return s;
  }
  catch (const json::exception& e)
  {
    throw LoadError("invalid scenario '" + name + "': " + e.what());
  }
}

//==============================================================================
Scenario load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw LoadError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(),
    std::filesystem::path(path).stem().string());
}

} // namespace medax
