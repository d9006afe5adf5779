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

#ifndef TRAJPRED_BASELINES_HPP_
#define TRAJPRED_BASELINES_HPP_

#include <array>

#include "trajpred/scene.hpp"

namespace trajpred
{

/// Kinematic models used by the physics baselines. Enum order is the
/// tie-break order for the oracle.
enum class PhysicsModel { CV, CA, CTRV, CTRA };

constexpr std::array<PhysicsModel, 4> kAllPhysicsModels{
  PhysicsModel::CV, PhysicsModel::CA, PhysicsModel::CTRV, PhysicsModel::CTRA};

const char * to_string(PhysicsModel m);

/// Closed-form rollout of the target state in its agent frame: 12 steps at
/// 0.5 s. CV holds speed and heading, CA integrates acceleration with the
/// speed floored at zero, CTRV holds speed and yaw rate, CTRA integrates
/// both. Yaw rates below 1e-9 rad/s fall back to the straight-line limit.
Trajectory rollout(PhysicsModel model, const AgentState & state);

/// CV rollout of the target's current state.
Trajectory constant_velocity_baseline(const Instance & instance);

struct OracleResult
{
  PhysicsModel model;
  Trajectory trajectory;
  double ade;
};

/// Among the four rollouts, the one with minimum ADE against the ground
/// truth; ties resolved in enum order.
OracleResult physics_oracle_detail(const Instance & instance);
Trajectory physics_oracle(const Instance & instance);

}  // namespace trajpred

#endif  // TRAJPRED_BASELINES_HPP_
