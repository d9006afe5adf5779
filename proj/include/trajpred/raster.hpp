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

#ifndef TRAJPRED_RASTER_HPP_
#define TRAJPRED_RASTER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trajpred/scene.hpp"

namespace trajpred
{

using Rgb = std::array<double, 3>;

/// Agent-centric BEV image: H x W x 3 floats in [0, 1], target at the anchor
/// pixel facing the top row.
struct Raster
{
  int height = 0;
  int width = 0;
  double meters_per_pixel = 0.5;
  int anchor_row = 0;
  int anchor_col = 0;
  std::vector<double> pixels;  // row-major, 3 channels per pixel

  double * at(int row, int col) { return &pixels[(static_cast<size_t>(row) * width + col) * 3]; }
  const double * at(int row, int col) const
  {
    return &pixels[(static_cast<size_t>(row) * width + col) * 3];
  }
};

/// Semantic color coding for categories and map layers, plus the fade factor
/// applied per history step.
struct Palette
{
  Rgb background{0.05, 0.05, 0.08};
  Rgb drivable_area{0.25, 0.25, 0.28};
  Rgb walkway{0.16, 0.20, 0.16};
  Rgb crosswalk{0.45, 0.42, 0.18};
  Rgb target_vehicle{0.90, 0.10, 0.10};
  Rgb other_vehicle{0.10, 0.45, 0.90};
  Rgb pedestrian{0.95, 0.75, 0.10};
  double fade_factor = 0.6;  // lambda in (0, 1]

  const Rgb & category_color(AgentCategory c) const;
  /// Throws std::invalid_argument when a triple leaves [0,1]^3, lambda leaves
  /// (0,1] or the target color collides with another entry.
  void validate() const;
};

struct RasterConfig
{
  int size = 64;                 // H = W
  double meters_per_pixel = 0.5;
  // Anchor at (48, 32) of a 64x64 raster keeps ~75% of the vertical extent
  // ahead of the agent. Scaled proportionally for other sizes.
  int anchor_row(int size_) const { return size_ * 3 / 4; }
  int anchor_col(int size_) const { return size_ / 2; }
};

/// Renders the scene into an agent-centric raster. Paint order is background,
/// drivable area, walkway, crosswalk, history boxes (oldest first), current
/// agents, target. A box k steps old is painted with the category color
/// blended toward the background by fade_factor^k. Integer scanline fill, no
/// anti-aliasing; agents outside the canvas are clipped silently.
Raster rasterize(
  const Scene & scene, const Palette & palette = Palette{}, const RasterConfig & config = RasterConfig{});

/// Raster rotated by k*90 degrees counterclockwise (exact pixel permutation).
Raster rotate90(const Raster & raster, int quarter_turns);

/// Lossless 8-bit PNG; values are quantized with round-half-up.
void raster_to_png(const Raster & raster, const std::string & path);
std::vector<uint8_t> raster_to_png_bytes(const Raster & raster);

inline uint8_t quantize8(double v)
{
  if (v <= 0.0) {
    return 0;
  }
  if (v >= 1.0) {
    return 255;
  }
  return static_cast<uint8_t>(v * 255.0 + 0.5);
}

}  // namespace trajpred

#endif  // TRAJPRED_RASTER_HPP_
