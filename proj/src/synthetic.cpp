// Copyright 2026 The trajpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajpred/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "trajpred/kinematics.hpp"
#include "trajpred/rng.hpp"

namespace trajpred
{

namespace
{

enum class Maneuver { straight, constant_turn, stop };

struct ManeuverParams
{
  Maneuver kind = Maneuver::straight;
  double speed = 0.0;     // at the prediction timestamp
  double accel = 0.0;     // constant over the maneuver
  double yaw_rate = 0.0;  // constant over the maneuver
};

Maneuver sample_maneuver(const GeneratorConfig & cfg, Rng & rng)
{
  const double total = cfg.straight_weight + cfg.turn_weight + cfg.stop_weight;
  if (total <= 0.0) {
    throw std::invalid_argument("generate_synthetic: maneuver weights sum to zero");
  }
  const double r = rng.uniform() * total;
  if (r < cfg.straight_weight) {
    return Maneuver::straight;
  }
  if (r < cfg.straight_weight + cfg.turn_weight) {
    return Maneuver::constant_turn;
  }
  return Maneuver::stop;
}

/// World pose of the maneuver at time t relative to the prediction timestamp
/// (t may be negative for history states).
Pose pose_at(const Pose & now, const ManeuverParams & m, double t)
{
  const Vec2 local = ctra_position(m.speed, m.accel, m.yaw_rate, t);
  return {from_agent_frame(local, now), normalize_angle(now.heading + m.yaw_rate * t)};
}

/// Corridor polygon of half-width `half` around the maneuver path, offset
/// sideways by `shift` (positive = left of travel).
Polygon corridor(const Pose & now, const ManeuverParams & m, double shift, double half)
{
  std::vector<Vec2> left;
  std::vector<Vec2> right;
  for (int i = -4; i <= kPredictionSteps; ++i) {
    const Pose p = pose_at(now, m, i * kStepSeconds);
    const Vec2 n{-std::sin(p.heading), std::cos(p.heading)};
    left.push_back(p.position + n * (shift + half));
    right.push_back(p.position + n * (shift - half));
  }
  Polygon poly = left;
  poly.insert(poly.end(), right.rbegin(), right.rend());
  return poly;
}

/// Rectangle across the corridor at maneuver time t.
Polygon crossing(const Pose & now, const ManeuverParams & m, double t, double along, double across)
{
  const Pose p = pose_at(now, m, t);
  const Vec2 d{std::cos(p.heading), std::sin(p.heading)};
  const Vec2 n{-d.y, d.x};
  const Vec2 a = d * (0.5 * along);
  const Vec2 b = n * (0.5 * across);
  return {p.position + a + b, p.position - a + b, p.position - a - b, p.position + a - b};
}

TrackedAgent make_target(const Pose & now, const ManeuverParams & m)
{
  TrackedAgent agent;
  agent.id = "agent_0";
  for (int k = -(kHistorySteps - 1); k <= 0; ++k) {
    const double t = k * kStepSeconds;
    const Pose p = pose_at(now, m, t);
    agent.history.emplace_back(
      p.position, p.heading, speed_at(m.speed, m.accel, t), m.accel, m.yaw_rate,
      AgentCategory::target_vehicle);
  }
  return agent;
}

TrackedAgent make_other(const Pose & target_now, int index, Rng & rng)
{
  TrackedAgent agent;
  agent.id = "agent_" + std::to_string(index);
  const bool pedestrian = rng.uniform() < 0.3;
  const Pose now{
    {target_now.position.x + rng.uniform(-25.0, 25.0),
     target_now.position.y + rng.uniform(-25.0, 25.0)},
    rng.uniform(-std::numbers::pi, std::numbers::pi)};
  const double speed = pedestrian ? rng.uniform(0.3, 1.8) : rng.uniform(0.0, 12.0);
  const ManeuverParams cv{Maneuver::straight, speed, 0.0, 0.0};
  const int len = rng.uniform_int(2, kHistorySteps);
  for (int k = -(len - 1); k <= 0; ++k) {
    const Pose p = pose_at(now, cv, k * kStepSeconds);
    agent.history.emplace_back(
      p.position, p.heading, speed, 0.0, 0.0,
      pedestrian ? AgentCategory::pedestrian : AgentCategory::other_vehicle);
  }
  return agent;
}

Instance make_instance(const GeneratorConfig & cfg, int index, Rng & rng)
{
  ManeuverParams m;
  m.kind = sample_maneuver(cfg, rng);
  m.speed = rng.uniform(cfg.speed_min, cfg.speed_max);
  switch (m.kind) {
    case Maneuver::straight:
      break;
    case Maneuver::constant_turn:
      m.yaw_rate = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(cfg.turn_rate_min, cfg.turn_rate_max);
      break;
    case Maneuver::stop:
      m.accel = -rng.uniform(cfg.decel_min, cfg.decel_max);
      break;
  }
  const Pose now{
    {rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)},
    rng.uniform(-std::numbers::pi, std::numbers::pi)};

  Instance inst;
  inst.scene.timestamp = index * kStepSeconds;
  inst.scene.target_id = "agent_0";
  inst.scene.agents.push_back(make_target(now, m));
  const int total_agents = rng.uniform_int(cfg.min_agents, cfg.max_agents);
  for (int i = 1; i < total_agents; ++i) {
    inst.scene.agents.push_back(make_other(now, i, rng));
  }

  // Widths chosen off the 0.5 m pixel grid so corridor edges never sit
  // exactly on a pixel-center boundary.
  constexpr double kLaneHalfWidth = 2.6;
  constexpr double kWalkwayHalfWidth = 0.9;
  inst.scene.map.drivable_area.push_back(corridor(now, m, 0.0, kLaneHalfWidth));
  inst.scene.map.walkway.push_back(
    corridor(now, m, kLaneHalfWidth + 1.2, kWalkwayHalfWidth));
  inst.scene.map.walkway.push_back(
    corridor(now, m, -(kLaneHalfWidth + 1.2), kWalkwayHalfWidth));
  if (rng.uniform() < 0.5) {
    inst.scene.map.crosswalk.push_back(
      crossing(now, m, rng.uniform(1.0, 4.0), 2.5, 2.0 * (kLaneHalfWidth + 2.5)));
  }

  // Ground truth lives in the target's agent frame; built there directly so
  // the noise-free case is bit-exact.
  inst.ground_truth.dt = kStepSeconds;
  inst.ground_truth.points = ctra_rollout(m.speed, m.accel, m.yaw_rate, kStepSeconds, kPredictionSteps);
  if (cfg.noise_sigma > 0.0) {
    for (auto & p : inst.ground_truth.points) {
      p.x += rng.normal(0.0, cfg.noise_sigma);
      p.y += rng.normal(0.0, cfg.noise_sigma);
    }
  }
  validate_instance(inst);
  return inst;
}

}  // namespace

std::vector<Instance> generate_synthetic(const GeneratorConfig & config, uint64_t seed)
{
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(config.count);
  for (int i = 0; i < config.count; ++i) {
    out.push_back(make_instance(config, i, rng));
  }
  return out;
}

}  // namespace trajpred
