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

#ifndef TRAJPRED_TRAJECTORY_DISTANCE_HPP_
#define TRAJPRED_TRAJECTORY_DISTANCE_HPP_

#include <stdexcept>
#include <string>

#include "trajpred/scene.hpp"

namespace trajpred
{

inline void require_same_length(const Trajectory & a, const Trajectory & b, const char * what)
{
  if (a.points.size() != b.points.size()) {
    throw std::invalid_argument(
      std::string(what) + ": trajectory length mismatch (" + std::to_string(a.points.size()) +
      " vs " + std::to_string(b.points.size()) + ")");
  }
}

/// Max over corresponding points of the Euclidean distance.
inline double max_pointwise_distance(const Trajectory & a, const Trajectory & b)
{
  require_same_length(a, b, "max_pointwise_distance");
  double worst = 0.0;
  for (size_t i = 0; i < a.points.size(); ++i) {
    const double d = (a.points[i] - b.points[i]).norm();
    if (d > worst) {
      worst = d;
    }
  }
  return worst;
}

/// Mean over corresponding points of the Euclidean distance (ADE).
inline double mean_pointwise_distance(const Trajectory & a, const Trajectory & b)
{
  require_same_length(a, b, "mean_pointwise_distance");
  if (a.points.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (size_t i = 0; i < a.points.size(); ++i) {
    total += (a.points[i] - b.points[i]).norm();
  }
  return total / static_cast<double>(a.points.size());
}

}  // namespace trajpred

#endif  // TRAJPRED_TRAJECTORY_DISTANCE_HPP_
