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

#ifndef TRAJPRED_KINEMATICS_HPP_
#define TRAJPRED_KINEMATICS_HPP_

#include <cmath>
#include <vector>

#include "trajpred/geometry.hpp"

namespace trajpred
{

/// Yaw rates below this magnitude take the straight-line limit.
constexpr double kOmegaEps = 1e-9;

/// Closed-form position at time t for motion starting at the origin with
/// heading 0, initial speed v0 >= 0, constant acceleration a and constant
/// yaw rate omega. Speed is floored at zero: once the vehicle stops it stays
/// put. Small-angle branches use sin^2 forms so the omega -> 0 limit is
/// numerically clean.
inline Vec2 ctra_position(double v0, double a, double omega, double t)
{
  // Freeze at the stopping time when decelerating to rest.
  if (a < 0.0) {
    const double t_stop = -v0 / a;
    if (t > t_stop) {
      t = t_stop;
    }
  }
  if (std::abs(omega) < kOmegaEps) {
    return {v0 * t + 0.5 * a * t * t, 0.0};
  }
  const double u = omega * t;
  const double sin_u = std::sin(u);
  const double half_sin_sq = std::sin(0.5 * u) * std::sin(0.5 * u);
  const double x = (v0 + a * t) * sin_u / omega - (2.0 * a / (omega * omega)) * half_sin_sq;
  const double y =
    (2.0 * v0 / omega) * half_sin_sq + (a / (omega * omega)) * (sin_u - u * std::cos(u));
  return {x, y};
}

/// Positions at t = dt, 2*dt, ..., steps*dt.
inline std::vector<Vec2> ctra_rollout(double v0, double a, double omega, double dt, int steps)
{
  std::vector<Vec2> pts;
  pts.reserve(steps);
  for (int i = 1; i <= steps; ++i) {
    pts.push_back(ctra_position(v0, a, omega, dt * i));
  }
  return pts;
}

/// Speed after time t under constant acceleration, floored at zero.
inline double speed_at(double v0, double a, double t)
{
  const double v = v0 + a * t;
  return v < 0.0 ? 0.0 : v;
}

}  // namespace trajpred

#endif  // TRAJPRED_KINEMATICS_HPP_
