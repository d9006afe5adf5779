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

#ifndef TRAJPRED_GEOMETRY_HPP_
#define TRAJPRED_GEOMETRY_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trajpred
{

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

inline bool is_finite(const Vec2 & v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r <= 0.0) {
    r += two_pi;
  }
  return r - std::numbers::pi;
}

/// Position plus heading of an agent in the world frame.
struct Pose
{
  Vec2 position;
  double heading = 0.0;  // radians, +x axis of the agent frame
};

/// World point -> agent frame whose +x axis is the agent heading and whose
/// origin is the agent position.
inline Vec2 to_agent_frame(const Vec2 & world_point, const Pose & pose)
{
  if (!is_finite(world_point) || !is_finite(pose.position) || !std::isfinite(pose.heading)) {
    throw std::invalid_argument("to_agent_frame: non-finite input");
  }
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  const Vec2 d = world_point - pose.position;
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

/// Inverse of to_agent_frame.
inline Vec2 from_agent_frame(const Vec2 & local_point, const Pose & pose)
{
  if (!is_finite(local_point) || !is_finite(pose.position) || !std::isfinite(pose.heading)) {
    throw std::invalid_argument("from_agent_frame: non-finite input");
  }
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  return {
    pose.position.x + c * local_point.x - s * local_point.y,
    pose.position.y + s * local_point.x + c * local_point.y};
}

}  // namespace trajpred

#endif  // TRAJPRED_GEOMETRY_HPP_
