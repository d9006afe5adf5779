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

#include "trajpred/baselines.hpp"

#include "trajpred/kinematics.hpp"
#include "trajpred/trajectory_distance.hpp"

namespace trajpred
{

const char * to_string(PhysicsModel m)
{
  switch (m) {
    case PhysicsModel::CV:
      return "CV";
    case PhysicsModel::CA:
      return "CA";
    case PhysicsModel::CTRV:
      return "CTRV";
    case PhysicsModel::CTRA:
      return "CTRA";
  }
  return "CV";
}

Trajectory rollout(PhysicsModel model, const AgentState & state)
{
  double accel = 0.0;
  double yaw_rate = 0.0;
  switch (model) {
    case PhysicsModel::CV:
      break;
    case PhysicsModel::CA:
      accel = state.acceleration;
      break;
    case PhysicsModel::CTRV:
      yaw_rate = state.yaw_rate;
      break;
    case PhysicsModel::CTRA:
      accel = state.acceleration;
      yaw_rate = state.yaw_rate;
      break;
  }
  Trajectory t;
  t.dt = kStepSeconds;
  t.points = ctra_rollout(state.speed, accel, yaw_rate, kStepSeconds, kPredictionSteps);
  return t;
}

Trajectory constant_velocity_baseline(const Instance & instance)
{
  return rollout(PhysicsModel::CV, instance.scene.target_state());
}

OracleResult physics_oracle_detail(const Instance & instance)
{
  const AgentState & state = instance.scene.target_state();
  OracleResult best{PhysicsModel::CV, {}, 0.0};
  bool first = true;
  for (PhysicsModel m : kAllPhysicsModels) {
    Trajectory candidate = rollout(m, state);
    const double err = mean_pointwise_distance(candidate, instance.ground_truth);
    if (first || err < best.ade) {
      best = {m, std::move(candidate), err};
      first = false;
    }
  }
  return best;
}

Trajectory physics_oracle(const Instance & instance)
{
  return physics_oracle_detail(instance).trajectory;
}

}  // namespace trajpred
