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

#include "trajpred/harness/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace trajpred::harness
{

namespace
{

constexpr int kCanvas = 540;
constexpr double kScale = 6.0;         // px per meter
constexpr double kOriginX = 270.0;     // agent position
constexpr double kOriginY = 430.0;

const char * kArmColors[] = {"#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
constexpr const char * kGroundTruthColor = "#1f77b4";
constexpr const char * kSetColor = "#cccccc";

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string polyline(const std::string & points, const char * color, const char * width,
                     const char * opacity = nullptr)
{
  std::string out = "  <polyline fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"";
  out += width;
  out += "\"";
  if (opacity != nullptr) {
    out += " opacity=\"";
    out += opacity;
    out += "\"";
  }
  out += " points=\"" + points + "\"/>\n";
  return out;
}

void write_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write SVG: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("SVG write failed: " + path);
  }
}

}  // namespace

std::string svg_polyline_points(const Trajectory & t)
{
  std::string out;
  for (size_t i = 0; i < t.points.size(); ++i) {
    if (i > 0) {
      out += " ";
    }
    // Heading-up view: +x (forward) rises, +y (left) goes toward lower px x.
    out += fmt(kOriginX - kScale * t.points[i].y) + "," + fmt(kOriginY - kScale * t.points[i].x);
  }
  return out;
}

std::string overlay_svg(
  const Instance & instance, const std::vector<std::pair<std::string, PredictionSet>> & arms,
  const TrajectorySet * background)
{
  std::string svg =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kCanvas) +
    "\" height=\"" + std::to_string(kCanvas) + "\" viewBox=\"0 0 " + std::to_string(kCanvas) +
    " " + std::to_string(kCanvas) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (background != nullptr) {
    for (const auto & element : background->elements) {
      svg += polyline(svg_polyline_points(element), kSetColor, "1", "0.8");
    }
  }

  // Agent marker at the origin.
  svg += "  <rect x=\"" + fmt(kOriginX - 4.0) + "\" y=\"" + fmt(kOriginY - 7.0) +
         "\" width=\"8\" height=\"14\" fill=\"black\"/>\n";

  for (size_t i = 0; i < arms.size(); ++i) {
    const auto & [name, preds] = arms[i];
    (void)name;
    if (preds.trajectories.empty()) {
      continue;
    }
    const int top = top_k_indices(preds, 1).front();
    svg += polyline(
      svg_polyline_points(preds.trajectories[top]),
      kArmColors[i % (sizeof(kArmColors) / sizeof(kArmColors[0]))], "2");
  }
  svg += polyline(svg_polyline_points(instance.ground_truth), kGroundTruthColor, "2");

  // Legend.
  double y = 24.0;
  svg += "  <text x=\"16\" y=\"" + fmt(y) + "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" +
         std::string(kGroundTruthColor) + "\">ground truth</text>\n";
  for (size_t i = 0; i < arms.size(); ++i) {
    y += 18.0;
    svg += "  <text x=\"16\" y=\"" + fmt(y) + "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" +
           std::string(kArmColors[i % (sizeof(kArmColors) / sizeof(kArmColors[0]))]) + "\">" +
           arms[i].first + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void plot_overlay(
  const Instance & instance, const std::vector<std::pair<std::string, PredictionSet>> & arms,
  const TrajectorySet * background, const std::string & path)
{
  write_file(path, overlay_svg(instance, arms, background));
}

std::string hitrate_curve_svg(const std::vector<RunRecord> & records)
{
  if (records.empty()) {
    throw std::invalid_argument("hitrate_curve_svg: no run records");
  }
  // Mean curve per arm across seeds, arms sorted by id.
  std::map<std::string, std::vector<std::vector<double>>> curves_by_arm;
  for (const auto & record : records) {
    if (record.report.hitrate_curve_2m.empty()) {
      throw std::invalid_argument(
        "hitrate_curve_svg: record for arm \"" + record.arm_id + "\" has no per-k curve");
    }
    curves_by_arm[record.arm_id].push_back(record.report.hitrate_curve_2m);
  }

  constexpr int kW = 480;
  constexpr int kH = 360;
  constexpr double kLeft = 48.0;
  constexpr double kBottom = 312.0;
  constexpr double kTop = 24.0;
  constexpr double kRight = 456.0;

  std::string svg =
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" viewBox=\"0 0 " +
    std::to_string(kW) + " " + std::to_string(kH) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "  <line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kRight) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(kTop) + "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double frac = tick / 4.0;
    const double y = kBottom - frac * (kBottom - kTop);
    svg += "  <text x=\"" + fmt(kLeft - 34.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(frac) + "</text>\n";
    svg += "  <line x1=\"" + fmt(kLeft - 4.0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
  }

  size_t k_max = 0;
  for (const auto & [arm, curves] : curves_by_arm) {
    (void)arm;
    for (const auto & curve : curves) {
      k_max = std::max(k_max, curve.size());
    }
  }
  auto x_of = [&](size_t k) {
    return k_max <= 1 ? kLeft
                      : kLeft + (kRight - kLeft) * static_cast<double>(k - 1) /
                          static_cast<double>(k_max - 1);
  };
  for (size_t k = 1; k <= k_max; ++k) {
    svg += "  <text x=\"" + fmt(x_of(k) - 3.0) + "\" y=\"" + fmt(kBottom + 16.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + std::to_string(k) + "</text>\n";
  }
  svg += "  <text x=\"" + fmt((kLeft + kRight) / 2.0 - 4.0) + "\" y=\"" + fmt(kBottom + 34.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\">k</text>\n";

  int color_index = 0;
  double legend_y = kTop + 8.0;
  for (const auto & [arm, curves] : curves_by_arm) {
    std::vector<double> mean(curves.front().size(), 0.0);
    for (const auto & curve : curves) {
      for (size_t i = 0; i < mean.size(); ++i) {
        mean[i] += curve[i];
      }
    }
    for (double & v : mean) {
      v /= static_cast<double>(curves.size());
    }
    std::string points;
    for (size_t i = 0; i < mean.size(); ++i) {
      if (i > 0) {
        points += " ";
      }
      points += fmt(x_of(i + 1)) + "," + fmt(kBottom - mean[i] * (kBottom - kTop));
    }
    const char * color = kArmColors[color_index % (sizeof(kArmColors) / sizeof(kArmColors[0]))];
    svg += polyline(points, color, "2");
    svg += "  <text x=\"" + fmt(kLeft + 12.0) + "\" y=\"" + fmt(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" + arm +
           "</text>\n";
    legend_y += 16.0;
    ++color_index;
  }
  svg += "</svg>\n";
  return svg;
}

void plot_hitrate_curve(const std::vector<RunRecord> & records, const std::string & path)
{
  write_file(path, hitrate_curve_svg(records));
}

}  // namespace trajpred::harness
