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

#ifndef TRAJPRED_SYNTHETIC_HPP_
#define TRAJPRED_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "trajpred/scene.hpp"

namespace trajpred
{

/// Parameters for the synthetic scene generator. Maneuvers are sampled by
/// weight; each ground truth is the exact kinematic rollout of its maneuver
/// plus Gaussian noise of `noise_sigma` per coordinate.
struct GeneratorConfig
{
  int count = 2000;
  int min_agents = 1;  // total agents including the target
  int max_agents = 4;
  double straight_weight = 1.0;
  double turn_weight = 1.0;
  double stop_weight = 1.0;
  double noise_sigma = 0.15;  // meters
  double speed_min = 2.0;     // m/s, initial speed range
  double speed_max = 14.0;
  double turn_rate_min = 0.15;  // rad/s magnitude for constant-turn
  double turn_rate_max = 0.6;
  double decel_min = 1.0;  // m/s^2 magnitude for stop
  double decel_max = 5.0;
};

/// Deterministic for a fixed (config, seed). count = 0 yields an empty list.
std::vector<Instance> generate_synthetic(const GeneratorConfig & config, uint64_t seed);

}  // namespace trajpred

#endif  // TRAJPRED_SYNTHETIC_HPP_
