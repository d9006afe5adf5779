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

#include "trajpred/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajpred
{

namespace
{

constexpr double kVehicleLength = 4.6;
constexpr double kVehicleWidth = 1.9;
constexpr double kPedestrianSize = 0.8;

struct PixelPoint
{
  double row;
  double col;
};

/// World point -> continuous pixel coordinates. The agent position lands on
/// the anchor pixel center; +x (heading) points toward the top row and +y
/// (left of travel) toward lower columns.
PixelPoint to_pixel(const Vec2 & world, const Pose & target, const Raster & raster)
{
  const Vec2 local = to_agent_frame(world, target);
  return {
    (raster.anchor_row + 0.5) - local.x / raster.meters_per_pixel,
    (raster.anchor_col + 0.5) - local.y / raster.meters_per_pixel};
}

void paint(Raster & raster, int row, int col, const Rgb & color)
{
  double * px = raster.at(row, col);
  px[0] = color[0];
  px[1] = color[1];
  px[2] = color[2];
}

/// Even-odd scanline fill over pixel centers; rows and columns half-open so
/// abutting polygons never double-paint a pixel.
void fill_polygon(Raster & raster, const std::vector<PixelPoint> & poly, const Rgb & color)
{
  if (poly.size() < 3) {
    return;
  }
  double row_min = poly[0].row;
  double row_max = poly[0].row;
  for (const auto & p : poly) {
    row_min = std::min(row_min, p.row);
    row_max = std::max(row_max, p.row);
  }
  const int r_begin = std::max(0, static_cast<int>(std::floor(row_min - 0.5)));
  const int r_end = std::min(raster.height - 1, static_cast<int>(std::ceil(row_max)));

  std::vector<double> crossings;
  for (int r = r_begin; r <= r_end; ++r) {
    const double y = r + 0.5;
    crossings.clear();
    for (size_t i = 0; i < poly.size(); ++i) {
      const PixelPoint & a = poly[i];
      const PixelPoint & b = poly[(i + 1) % poly.size()];
      const double y1 = a.row;
      const double y2 = b.row;
      if (y1 == y2) {
        continue;  // horizontal edge
      }
      if ((y >= std::min(y1, y2)) && (y < std::max(y1, y2))) {
        crossings.push_back(a.col + (y - y1) * (b.col - a.col) / (y2 - y1));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (size_t i = 0; i + 1 < crossings.size(); i += 2) {
      int c0 = static_cast<int>(std::ceil(crossings[i] - 0.5));
      int c1 = static_cast<int>(std::ceil(crossings[i + 1] - 0.5)) - 1;
      c0 = std::max(c0, 0);
      c1 = std::min(c1, raster.width - 1);
      for (int c = c0; c <= c1; ++c) {
        paint(raster, r, c, color);
      }
    }
  }
}

std::vector<PixelPoint> world_polygon(
  const Polygon & poly, const Pose & target, const Raster & raster)
{
  std::vector<PixelPoint> out;
  out.reserve(poly.size());
  for (const auto & p : poly) {
    out.push_back(to_pixel(p, target, raster));
  }
  return out;
}

std::vector<PixelPoint> agent_box(
  const AgentState & state, const Pose & target, const Raster & raster)
{
  const bool ped = state.category == AgentCategory::pedestrian;
  const double half_len = 0.5 * (ped ? kPedestrianSize : kVehicleLength);
  const double half_wid = 0.5 * (ped ? kPedestrianSize : kVehicleWidth);
  const Vec2 d{std::cos(state.heading), std::sin(state.heading)};
  const Vec2 n{-d.y, d.x};
  const Polygon corners{
    state.position + d * half_len + n * half_wid, state.position - d * half_len + n * half_wid,
    state.position - d * half_len - n * half_wid, state.position + d * half_len - n * half_wid};
  return world_polygon(corners, target, raster);
}

Rgb faded(const Rgb & color, const Rgb & background, double factor)
{
  return {
    background[0] + factor * (color[0] - background[0]),
    background[1] + factor * (color[1] - background[1]),
    background[2] + factor * (color[2] - background[2])};
}

}  // namespace

const Rgb & Palette::category_color(AgentCategory c) const
{
  switch (c) {
    case AgentCategory::target_vehicle:
      return target_vehicle;
    case AgentCategory::other_vehicle:
      return other_vehicle;
    case AgentCategory::pedestrian:
      return pedestrian;
  }
  return other_vehicle;
}

void Palette::validate() const
{
  const auto in_range = [](const Rgb & c) {
    return c[0] >= 0.0 && c[0] <= 1.0 && c[1] >= 0.0 && c[1] <= 1.0 && c[2] >= 0.0 && c[2] <= 1.0;
  };
  for (const Rgb * c :
       {&background, &drivable_area, &walkway, &crosswalk, &target_vehicle, &other_vehicle,
        &pedestrian}) {
    if (!in_range(*c)) {
      throw std::invalid_argument("Palette: color channel outside [0,1]");
    }
  }
  if (!(fade_factor > 0.0 && fade_factor <= 1.0)) {
    throw std::invalid_argument("Palette: fade_factor must lie in (0,1]");
  }
  for (const Rgb * c : {&background, &drivable_area, &walkway, &crosswalk, &other_vehicle, &pedestrian}) {
    if (*c == target_vehicle) {
      throw std::invalid_argument("Palette: target color must be distinct from all other entries");
    }
  }
}

Raster rasterize(const Scene & scene, const Palette & palette, const RasterConfig & config)
{
  validate_scene(scene);
  palette.validate();
  if (!(config.meters_per_pixel > 0.0) || config.size <= 0) {
    throw std::invalid_argument("rasterize: resolution and size must be positive");
  }

  Raster raster;
  raster.height = config.size;
  raster.width = config.size;
  raster.meters_per_pixel = config.meters_per_pixel;
  raster.anchor_row = config.anchor_row(config.size);
  raster.anchor_col = config.anchor_col(config.size);
  raster.pixels.assign(static_cast<size_t>(config.size) * config.size * 3, 0.0);
  for (int r = 0; r < raster.height; ++r) {
    for (int c = 0; c < raster.width; ++c) {
      paint(raster, r, c, palette.background);
    }
  }

  const Pose target_pose = scene.target_state().pose();
  for (const auto & poly : scene.map.drivable_area) {
    fill_polygon(raster, world_polygon(poly, target_pose, raster), palette.drivable_area);
  }
  for (const auto & poly : scene.map.walkway) {
    fill_polygon(raster, world_polygon(poly, target_pose, raster), palette.walkway);
  }
  for (const auto & poly : scene.map.crosswalk) {
    fill_polygon(raster, world_polygon(poly, target_pose, raster), palette.crosswalk);
  }

  // Past positions, oldest first, fading toward the background with age.
  for (int age = kHistorySteps - 1; age >= 1; --age) {
    for (const auto & agent : scene.agents) {
      const int n = static_cast<int>(agent.history.size());
      const int idx = n - 1 - age;
      if (idx < 0) {
        continue;
      }
      const AgentState & s = agent.history[idx];
      const double factor = std::pow(palette.fade_factor, age);
      fill_polygon(
        raster, agent_box(s, target_pose, raster),
        faded(palette.category_color(s.category), palette.background, factor));
    }
  }
  for (const auto & agent : scene.agents) {
    if (agent.id == scene.target_id) {
      continue;
    }
    const AgentState & s = agent.history.back();
    fill_polygon(raster, agent_box(s, target_pose, raster), palette.category_color(s.category));
  }
  const AgentState & target_state = scene.target_state();
  fill_polygon(raster, agent_box(target_state, target_pose, raster), palette.target_vehicle);
  return raster;
}

Raster rotate90(const Raster & raster, int quarter_turns)
{
  if (raster.height != raster.width) {
    throw std::invalid_argument("rotate90: raster must be square");
  }
  Raster out = raster;
  Raster in = raster;
  const int n = raster.height;
  for (int turn = 0; turn < ((quarter_turns % 4) + 4) % 4; ++turn) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double * src = in.at(c, n - 1 - r);
        double * dst = out.at(r, c);
        dst[0] = src[0];
        dst[1] = src[1];
        dst[2] = src[2];
      }
    }
    in = out;
  }
  return in;
}

}  // namespace trajpred
