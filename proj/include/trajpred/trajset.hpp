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

#ifndef TRAJPRED_TRAJSET_HPP_
#define TRAJPRED_TRAJSET_HPP_

#include <string>
#include <vector>

#include "trajpred/scene.hpp"
#include "trajpred/trajectory_distance.hpp"

namespace trajpred
{

/// Fixed catalog of candidate trajectories (agent frame) covering a source
/// dataset: every source trajectory is within `epsilon` of some element under
/// max_pointwise_distance.
struct TrajectorySet
{
  std::vector<Trajectory> elements;
  double epsilon = 2.0;
  std::string source_hash;

  int size() const { return static_cast<int>(elements.size()); }
};

enum class MatchMetric { mean_pointwise, max_pointwise };

/// Greedy max-coverage construction: repeatedly pick the input trajectory
/// whose epsilon-ball covers the most still-uncovered inputs (ties broken by
/// lowest input index) until everything is covered. Deterministic.
TrajectorySet build_cover(const std::vector<Trajectory> & trajectories, double epsilon);

/// Index of the set element closest to `gt` under the chosen metric, ties
/// broken by lowest index.
int closest_element(
  const TrajectorySet & set, const Trajectory & gt,
  MatchMetric metric = MatchMetric::mean_pointwise);

/// Brute-force check of the coverage invariant.
bool verify_cover(const TrajectorySet & set, const std::vector<Trajectory> & trajectories);

std::string trajset_to_json(const TrajectorySet & set);
void save_trajset(const TrajectorySet & set, const std::string & path);
TrajectorySet load_trajset(const std::string & path);

}  // namespace trajpred

#endif  // TRAJPRED_TRAJSET_HPP_
