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

#include "trajpred/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace trajpred
{

void PredictionSet::validate() const
{
  if (trajectories.size() != probabilities.size()) {
    throw std::invalid_argument("PredictionSet: trajectory/probability count mismatch");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("PredictionSet: negative probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument(
      "PredictionSet: probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<int> top_k_indices(const PredictionSet & preds, int k)
{
  std::vector<int> order(preds.trajectories.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return preds.probabilities[a] > preds.probabilities[b];
  });
  const size_t take = std::min<size_t>(order.size(), static_cast<size_t>(std::max(k, 0)));
  order.resize(take);
  return order;
}

double ade(const Trajectory & pred, const Trajectory & gt)
{
  return mean_pointwise_distance(pred, gt);
}

double min_ade_k(const PredictionSet & preds, const Trajectory & gt, int k)
{
  if (preds.trajectories.empty()) {
    throw std::invalid_argument("min_ade_k: empty prediction set");
  }
  if (k < 1) {
    throw std::invalid_argument("min_ade_k: k must be >= 1");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i : top_k_indices(preds, k)) {
    best = std::min(best, ade(preds.trajectories[i], gt));
  }
  return best;
}

double fde(const PredictionSet & preds, const Trajectory & gt)
{
  if (preds.trajectories.empty()) {
    throw std::invalid_argument("fde: empty prediction set");
  }
  if (gt.points.empty()) {
    throw std::invalid_argument("fde: empty ground truth");
  }
  const int top = top_k_indices(preds, 1).front();
  const Trajectory & best = preds.trajectories[top];
  require_same_length(best, gt, "fde");
  return (best.points.back() - gt.points.back()).norm();
}

namespace
{

bool instance_hit(const PredictionSet & preds, const Trajectory & gt, int k, double d)
{
  for (int i : top_k_indices(preds, k)) {
    if (max_pointwise_distance(preds.trajectories[i], gt) <= d) {
      return true;
    }
  }
  return false;
}

}  // namespace

double hit_rate(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts, int k,
  double d)
{
  if (preds_per_instance.empty()) {
    throw std::invalid_argument("hit_rate: empty instance list");
  }
  if (preds_per_instance.size() != gts.size()) {
    throw std::invalid_argument("hit_rate: prediction/ground-truth count mismatch");
  }
  if (k < 1 || !(d > 0.0)) {
    throw std::invalid_argument("hit_rate: need k >= 1 and d > 0");
  }
  int hits = 0;
  for (size_t i = 0; i < gts.size(); ++i) {
    hits += instance_hit(preds_per_instance[i], gts[i], k, d) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(gts.size());
}

double mse(std::span<const double> pred, std::span<const double> gt)
{
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("mse: series length mismatch");
  }
  if (pred.empty()) {
    throw std::invalid_argument("mse: empty series");
  }
  double total = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - gt[i];
    total += d * d;
  }
  return total / static_cast<double>(pred.size());
}

std::vector<std::pair<int, double>> hitrate_curve(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts, double d,
  int k_max)
{
  if (k_max < 1) {
    throw std::invalid_argument("hitrate_curve: k_max must be >= 1");
  }
  std::vector<std::pair<int, double>> curve;
  curve.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    curve.emplace_back(k, hit_rate(preds_per_instance, gts, k, d));
  }
  return curve;
}

MetricReport evaluate(
  std::span<const PredictionSet> preds_per_instance, std::span<const Trajectory> gts,
  int curve_k_max)
{
  if (preds_per_instance.size() != gts.size() || preds_per_instance.empty()) {
    throw std::invalid_argument("evaluate: need equal, nonempty prediction/ground-truth lists");
  }
  MetricReport report;
  report.per_instance.reserve(gts.size());
  for (size_t i = 0; i < gts.size(); ++i) {
    PerInstanceMetrics m;
    m.min_ade_1 = min_ade_k(preds_per_instance[i], gts[i], 1);
    m.min_ade_5 = min_ade_k(preds_per_instance[i], gts[i], 5);
    m.min_ade_10 = min_ade_k(preds_per_instance[i], gts[i], 10);
    m.fde = fde(preds_per_instance[i], gts[i]);
    m.hit_5_2m = instance_hit(preds_per_instance[i], gts[i], 5, kHitThresholdMeters) ? 1 : 0;
    report.min_ade_1 += m.min_ade_1;
    report.min_ade_5 += m.min_ade_5;
    report.min_ade_10 += m.min_ade_10;
    report.fde += m.fde;
    report.hit_rate_5_2m += m.hit_5_2m;
    report.per_instance.push_back(m);
  }
  const double n = static_cast<double>(gts.size());
  report.min_ade_1 /= n;
  report.min_ade_5 /= n;
  report.min_ade_10 /= n;
  report.fde /= n;
  report.hit_rate_5_2m /= n;
  for (const auto & [k, rate] : hitrate_curve(preds_per_instance, gts, kHitThresholdMeters, curve_k_max)) {
    (void)k;
    report.hitrate_curve_2m.push_back(rate);
  }
  return report;
}

std::string MetricReport::to_json() const
{
  nlohmann::json obj;
  obj["minade1"] = min_ade_1;
  obj["minade5"] = min_ade_5;
  obj["minade10"] = min_ade_10;
  obj["fde"] = fde;
  obj["hitrate_5_2m"] = hit_rate_5_2m;
  obj["hitrate_curve_2m"] = hitrate_curve_2m;
  nlohmann::json per = nlohmann::json::array();
  for (const auto & m : per_instance) {
    per.push_back(
      {{"minade1", m.min_ade_1},
       {"minade5", m.min_ade_5},
       {"minade10", m.min_ade_10},
       {"fde", m.fde},
       {"hit_5_2m", m.hit_5_2m}});
  }
  obj["per_instance"] = std::move(per);
  return obj.dump(1);
}

MetricReport MetricReport::from_json(const std::string & text)
{
  const nlohmann::json obj = nlohmann::json::parse(text);
  MetricReport report;
  report.min_ade_1 = obj.at("minade1").get<double>();
  report.min_ade_5 = obj.at("minade5").get<double>();
  report.min_ade_10 = obj.at("minade10").get<double>();
  report.fde = obj.at("fde").get<double>();
  report.hit_rate_5_2m = obj.at("hitrate_5_2m").get<double>();
  report.hitrate_curve_2m = obj.at("hitrate_curve_2m").get<std::vector<double>>();
  for (const auto & m : obj.at("per_instance")) {
    PerInstanceMetrics p;
    p.min_ade_1 = m.at("minade1").get<double>();
    p.min_ade_5 = m.at("minade5").get<double>();
    p.min_ade_10 = m.at("minade10").get<double>();
    p.fde = m.at("fde").get<double>();
    p.hit_5_2m = m.at("hit_5_2m").get<int>();
    report.per_instance.push_back(p);
  }
  return report;
}

const char * kReportCsvHeader = "arm,seed,minade1,minade5,minade10,fde,hitrate_5_2m";

std::string report_csv_row(
  const std::string & arm, const std::string & seed, const MetricReport & report)
{
  char buf[256];
  std::snprintf(
    buf, sizeof(buf), "%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f", arm.c_str(), seed.c_str(),
    report.min_ade_1, report.min_ade_5, report.min_ade_10, report.fde, report.hit_rate_5_2m);
  return buf;
}

}  // namespace trajpred
