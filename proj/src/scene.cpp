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

#include "trajpred/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajpred
{

namespace
{

double clamp_tracked(double v, double lo, double hi, int * clamp_count)
{
  if (v < lo || v > hi) {
    if (clamp_count != nullptr) {
      ++*clamp_count;
    }
    return std::clamp(v, lo, hi);
  }
  return v;
}

}  // namespace

const char * to_string(AgentCategory c)
{
  switch (c) {
    case AgentCategory::target_vehicle:
      return "target_vehicle";
    case AgentCategory::other_vehicle:
      return "other_vehicle";
    case AgentCategory::pedestrian:
      return "pedestrian";
  }
  return "other_vehicle";
}

AgentCategory agent_category_from_string(const std::string & s)
{
  if (s == "target_vehicle") {
    return AgentCategory::target_vehicle;
  }
  if (s == "other_vehicle") {
    return AgentCategory::other_vehicle;
  }
  if (s == "pedestrian") {
    return AgentCategory::pedestrian;
  }
  throw std::invalid_argument("unknown agent category: \"" + s + "\"");
}

AgentState::AgentState(
  Vec2 position_, double heading_, double speed_, double acceleration_, double yaw_rate_,
  AgentCategory category_, int * clamp_count)
: position(position_),
  heading(normalize_angle(heading_)),
  speed(clamp_tracked(speed_, 0.0, kMaxSpeed, clamp_count)),
  acceleration(clamp_tracked(acceleration_, -kMaxAccel, kMaxAccel, clamp_count)),
  yaw_rate(clamp_tracked(yaw_rate_, -kMaxYawRate, kMaxYawRate, clamp_count)),
  category(category_)
{
  if (!is_finite(position) || !std::isfinite(heading_)) {
    throw std::invalid_argument("AgentState: non-finite pose");
  }
}

bool is_valid_prediction(const Trajectory & t)
{
  if (t.points.size() != static_cast<size_t>(kPredictionSteps) || t.dt != kStepSeconds) {
    return false;
  }
  return std::all_of(t.points.begin(), t.points.end(), [](const Vec2 & p) {
    return is_finite(p);
  });
}

void require_prediction(const Trajectory & t, const std::string & what)
{
  if (!is_valid_prediction(t)) {
    throw std::invalid_argument(
      what + ": expected " + std::to_string(kPredictionSteps) + " finite points at dt=0.5, got " +
      std::to_string(t.points.size()) + " points at dt=" + std::to_string(t.dt));
  }
}

const TrackedAgent & Scene::target() const
{
  for (const auto & a : agents) {
    if (a.id == target_id) {
      return a;
    }
  }
  throw std::invalid_argument("Scene: target_id \"" + target_id + "\" not among agents");
}

void validate_scene(const Scene & scene)
{
  const TrackedAgent & t = scene.target();  // throws when missing
  (void)t;
  for (const auto & a : scene.agents) {
    if (a.history.empty() || a.history.size() > static_cast<size_t>(kHistorySteps)) {
      throw std::invalid_argument(
        "Scene: agent \"" + a.id + "\" history must hold 1.." + std::to_string(kHistorySteps) +
        " states, got " + std::to_string(a.history.size()));
    }
  }
}

void validate_instance(const Instance & instance)
{
  validate_scene(instance.scene);
  require_prediction(instance.ground_truth, "Instance.ground_truth");
}

}  // namespace trajpred
