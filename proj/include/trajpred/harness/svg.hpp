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

#ifndef TRAJPRED_HARNESS_SVG_HPP_
#define TRAJPRED_HARNESS_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "trajpred/harness/experiment.hpp"
#include "trajpred/metrics.hpp"
#include "trajpred/scene.hpp"
#include "trajpred/trajset.hpp"

namespace trajpred::harness
{

/// Agent-frame meters -> plot pixel coordinates, heading up. Shared by every
/// polyline emitter so equal trajectories produce equal `points` strings.
std::string svg_polyline_points(const Trajectory & t);

/// Prediction overlay: trajectory-set background in gray, ground truth in
/// blue, one colored polyline per arm (most probable mode), plus a legend.
/// Output bytes are deterministic.
std::string overlay_svg(
  const Instance & instance, const std::vector<std::pair<std::string, PredictionSet>> & arms,
  const TrajectorySet * background);
void plot_overlay(
  const Instance & instance, const std::vector<std::pair<std::string, PredictionSet>> & arms,
  const TrajectorySet * background, const std::string & path);

/// HitRate(k) curves at the 2 m threshold, one curve per arm (mean across
/// that arm's seeds), k on the x axis.
std::string hitrate_curve_svg(const std::vector<RunRecord> & records);
void plot_hitrate_curve(const std::vector<RunRecord> & records, const std::string & path);

}  // namespace trajpred::harness

#endif  // TRAJPRED_HARNESS_SVG_HPP_
