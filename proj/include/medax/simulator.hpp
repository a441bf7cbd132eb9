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

#ifndef MEDAX__SIMULATOR_HPP
#define MEDAX__SIMULATOR_HPP

#include <medax/local_nav.hpp>
#include <medax/poi.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string_view>
#include <vector>

namespace medax {

//==============================================================================
enum class Method
{
  GrvoPlain,
  GrvoModulated
};

std::string_view to_string(Method method);

/// Parses "grvo_plain" or "grvo_modulated". Throws LoadError otherwise.
Method method_from_string(std::string_view name);

//==============================================================================
/// Freespace, skeleton, and precomputed shift table shared by all agents.
struct World
{
  PolyEnvironment env;
  SkeletonGraph skeleton;
  ShiftTable shift_table;

  /// Wall time of skeleton extraction plus table construction.
  double precompute_ms = 0.0;
};

World build_world(PolyEnvironment env, double cell_size,
  const PoiParams& poi = {}, const SkeletonOptions& options = {},
  double r_agent = BodySize{}.bounding_radius());

//==============================================================================
struct SimConfig
{
  double dt = 0.05;
  int max_frames = 6000;
  double goal_tolerance = 2.0;
  int deadlock_window = 200;
  double deadlock_displacement = 0.5;
  std::uint64_t rng_seed = 0;
  Method method = Method::GrvoModulated;

  NavParams nav;
  PoiParams poi;

  /// Per-frame decision workers. 0 reads MEDAX_THREADS, defaulting to 1.
  int threads = 0;

  /// Keep the per-frame POI sets in the report.
  bool record_pois = false;
};

/// Throws SetupError when a field is out of range.
void validate(const SimConfig& config);

/// Worker count for a config, after consulting MEDAX_THREADS.
int worker_count(const SimConfig& config);

//==============================================================================
struct TrajectorySample
{
  int frame;
  Eigen::Vector3d pose;
  double trailer_angle;
  Vector2 velocity;
};

struct AgentReport
{
  int id = 0;
  ModelKind model = ModelKind::DiffDrive;
  std::vector<TrajectorySample> trajectory;
  double path_length = 0.0;

  /// Start to goal through the skeleton: straight legs to and from the
  /// projected vertices plus the geodesic between them.
  double reference_length = 0.0;

  bool reached = false;
  int reached_frame = -1;
  int modulated_frames = 0;
};

struct PoiRecord
{
  int frame;
  int agent;
  Vector2 position;
  int n;
  bool shifted;
};

enum class Outcome
{
  Success,
  Collision,
  Deadlock,
  Timeout
};

std::string_view to_string(Outcome outcome);

struct SimReport
{
  std::vector<AgentReport> agents;
  Outcome outcome = Outcome::Timeout;
  bool success = false;
  int collision_count = 0;
  int frames_used = 0;
  double mean_frame_ms = 0.0;

  /// Mean per frame of the summed detect, shift, merge, and modulate time.
  double poi_overhead_ms = 0.0;
  double max_poi_overhead_ms = 0.0;

  std::vector<PoiRecord> pois;
};

/// Runs the decentralized frame loop. Throws SetupError when an agent starts
/// outside the freespace, in collision, or without a reference path.
SimReport run(const World& world, std::vector<AgentState> agents,
  const SimConfig& config);

//==============================================================================
struct SpawnRegion
{
  Eigen::AlignedBox2d start;
  Eigen::AlignedBox2d goal;
};

struct PlacementOptions
{
  ModelKind model = ModelKind::DiffDrive;

  /// Minimum start spacing between agent centers.
  double start_spacing = 2.0 * (BodySize{}.bounding_radius() + 0.5);

  /// Minimum spacing between goals.
  double goal_spacing = 2.0 * BodySize{}.bounding_radius();

  int max_attempts = 10000;
};

/// Rejection-samples collision-free starts (clearance >= r_agent) and goals.
/// Agent k uses region k % regions.size(). Throws SetupError on exhaustion.
std::vector<AgentState> place_random_agents(const World& world, int n,
  std::mt19937_64& rng, const std::vector<SpawnRegion>& regions,
  const PlacementOptions& options = {});

//==============================================================================
using AgentGenerator =
  std::function<std::vector<AgentState>(std::mt19937_64& rng)>;

struct BatchReport
{
  Method method = Method::GrvoModulated;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;

  /// Over agents that reached their goals.
  double mean_path_length = 0.0;
  double mean_reference_length = 0.0;
  int reached_agents = 0;

  double mean_fps = 0.0;
  double mean_frame_ms = 0.0;
  double mean_poi_overhead_ms = 0.0;
  double mean_frames = 0.0;

  int collisions = 0;
  int deadlocks = 0;
  int timeouts = 0;

  std::vector<SimReport> runs;
};

/// Trials with seeds rng_seed .. rng_seed + trials - 1. Independent trials
/// use up to worker_count(config) threads; each trial runs single-threaded.
BatchReport batch(const World& world, const AgentGenerator& generator,
  const SimConfig& config, int trials, bool keep_runs = false);

//==============================================================================
/// frame,agent_id,x,y,theta,trailer_angle,vx,vy
void write_trajectory_csv(const SimReport& report, std::ostream& out);

/// frame,agent,poi_x,poi_y,n,shifted
void write_poi_csv(const SimReport& report, std::ostream& out);

} // namespace medax

#endif // MEDAX__SIMULATOR_HPP
