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

#ifndef TRAJPRED_SCENE_HPP_
#define TRAJPRED_SCENE_HPP_

#include <array>
#include <string>
#include <vector>

#include "trajpred/geometry.hpp"

namespace trajpred
{

// Kinematic input ranges. Out-of-range values are clamped on construction and
// the same bounds normalize the state vector fed to the networks.
constexpr double kMaxSpeed = 30.0;        // m/s
constexpr double kMaxAccel = 25.0;        // m/s^2
constexpr double kMaxYawRate = 2.0 * 3.141592653589793;  // rad/s

// Prediction horizon: 6 s sampled at 2 Hz.
constexpr int kPredictionSteps = 12;
constexpr double kStepSeconds = 0.5;

// History window: 4 past states plus the current one (2 s at 2 Hz).
constexpr int kHistorySteps = 5;

enum class AgentCategory { target_vehicle, other_vehicle, pedestrian };

const char * to_string(AgentCategory c);
AgentCategory agent_category_from_string(const std::string & s);

/// Kinematic snapshot of one agent in the world frame. Construction clamps
/// speed/acceleration/yaw rate into their ranges and wraps the heading into
/// (-pi, pi]; `clamp_count`, when given, is incremented once per clamped field.
struct AgentState
{
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
  double acceleration = 0.0;
  double yaw_rate = 0.0;
  AgentCategory category = AgentCategory::other_vehicle;

  AgentState() = default;
  AgentState(
    Vec2 position, double heading, double speed, double acceleration, double yaw_rate,
    AgentCategory category, int * clamp_count = nullptr);

  Pose pose() const { return Pose{position, heading}; }
};

/// Fixed-rate sequence of 2D positions.
struct Trajectory
{
  std::vector<Vec2> points;
  double dt = kStepSeconds;
};

/// True iff `t` satisfies the prediction contract: exactly 12 points at
/// dt = 0.5 s, all coordinates finite.
bool is_valid_prediction(const Trajectory & t);
/// Throws std::invalid_argument when the contract is violated.
void require_prediction(const Trajectory & t, const std::string & what);

using Polygon = std::vector<Vec2>;

struct MapLayers
{
  std::vector<Polygon> drivable_area;
  std::vector<Polygon> crosswalk;
  std::vector<Polygon> walkway;
};

struct TrackedAgent
{
  std::string id;
  std::vector<AgentState> history;  // time ordered, oldest first, last = current
};

/// Map layers plus all agents' history windows. One prediction instance
/// targets one agent at one timestamp.
struct Scene
{
  MapLayers map;
  std::vector<TrackedAgent> agents;
  std::string target_id;
  double timestamp = 0.0;

  const TrackedAgent & target() const;
  const AgentState & target_state() const { return target().history.back(); }
};

/// Throws std::invalid_argument when a Scene invariant is violated (missing
/// target, empty or oversized history).
void validate_scene(const Scene & scene);

/// One prediction problem: a scene and the target's future in its agent frame.
struct Instance
{
  Scene scene;
  Trajectory ground_truth;
};

void validate_instance(const Instance & instance);

/// The target agent's state inputs for the network heads.
struct StateVector
{
  double speed = 0.0;
  double acceleration = 0.0;
  double yaw_rate = 0.0;

  static StateVector from_state(const AgentState & s)
  {
    return {s.speed, s.acceleration, s.yaw_rate};
  }

  /// Scaled into [-1, 1] by the range bounds before entering a network.
  std::array<double, 3> normalized() const
  {
    return {speed / kMaxSpeed, acceleration / kMaxAccel, yaw_rate / kMaxYawRate};
  }
};

}  // namespace trajpred

#endif  // TRAJPRED_SCENE_HPP_
