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

#ifndef TRAJPRED_METRICS_HPP_
#define TRAJPRED_METRICS_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajpred/scene.hpp"
#include "trajpred/trajectory_distance.hpp"

namespace trajpred
{

/// Multi-modal prediction: candidate trajectories with a probability each.
struct PredictionSet
{
  std::vector<Trajectory> trajectories;
  std::vector<double> probabilities;

  /// Throws std::invalid_argument unless probabilities are nonnegative, sum
  /// to 1 within 1e-6 and match the trajectory count.
  void validate() const;
};

/// Indices of the k most probable trajectories, ties broken by lower index.
/// k > set size selects everything.
std::vector<int> top_k_indices(const PredictionSet & preds, int k);

/// Mean pointwise displacement between prediction and ground truth.
double ade(const Trajectory & pred, const Trajectory & gt);

/// Min ADE among the k most probable trajectories.
double min_ade_k(const PredictionSet & preds, const Trajectory & gt, int k);

/// Final-point displacement of the most probable trajectory.
double fde(const PredictionSet & preds, const Trajectory & gt);

/// Fraction of instances where some top-k trajectory stays within d of the
/// ground truth at every point (max_pointwise_distance <= d).
double hit_rate(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts, int k,
  double d);

/// Mean squared difference of two aligned scalar series.
double mse(std::span<const double> pred, std::span<const double> gt);

/// HitRate at threshold d for each k in [1, k_max]; nondecreasing in k.
std::vector<std::pair<int, double>> hitrate_curve(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts, double d,
  int k_max);

struct PerInstanceMetrics
{
  double min_ade_1 = 0.0;
  double min_ade_5 = 0.0;
  double min_ade_10 = 0.0;
  double fde = 0.0;
  int hit_5_2m = 0;
};

/// Aggregated evaluation of one model over a dataset, with the per-instance
/// breakdown kept for reports and plots.
struct MetricReport
{
  double min_ade_1 = 0.0;
  double min_ade_5 = 0.0;
  double min_ade_10 = 0.0;
  double fde = 0.0;
  double hit_rate_5_2m = 0.0;
  std::vector<PerInstanceMetrics> per_instance;
  std::vector<double> hitrate_curve_2m;  // index k-1, k in [1, curve_k_max]

  std::string to_json() const;
  static MetricReport from_json(const std::string & text);
};

constexpr int kCurveKMax = 15;
constexpr double kHitThresholdMeters = 2.0;

MetricReport evaluate(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts,
  int curve_k_max = kCurveKMax);

/// One CSV line per report under a fixed header:
/// arm,seed,minade1,minade5,minade10,fde,hitrate_5_2m
extern const char * kReportCsvHeader;
std::string report_csv_row(
  const std::string & arm, const std::string & seed, const MetricReport & report);

}  // namespace trajpred

#endif  // TRAJPRED_METRICS_HPP_
