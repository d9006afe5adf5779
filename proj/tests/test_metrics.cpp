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

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "trajpred/metrics.hpp"
#include "trajpred/rng.hpp"

using trajpred::PredictionSet;
using trajpred::Trajectory;
using trajpred::Vec2;

namespace
{

Trajectory line(double speed, double offset_y = 0.0)
{
  Trajectory t;
  for (int i = 1; i <= 12; ++i) {
    t.points.push_back({0.5 * speed * i, offset_y});
  }
  return t;
}

Trajectory shifted(const Trajectory & base, Vec2 delta)
{
  Trajectory t = base;
  for (auto & p : t.points) {
    p = p + delta;
  }
  return t;
}

PredictionSet random_set(trajpred::Rng & rng, int max_modes = 20)
{
  const int n = rng.uniform_int(1, max_modes);
  PredictionSet set;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Trajectory t;
    for (int j = 0; j < 12; ++j) {
      t.points.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
    }
    set.trajectories.push_back(std::move(t));
    // A few exact ties to exercise the tie rule.
    const double w = rng.uniform() < 0.3 ? 0.25 : rng.uniform(0.01, 1.0);
    set.probabilities.push_back(w);
    total += w;
  }
  for (double & p : set.probabilities) {
    p /= total;
  }
  return set;
}

Trajectory random_gt(trajpred::Rng & rng)
{
  Trajectory t;
  for (int j = 0; j < 12; ++j) {
    t.points.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
  }
  return t;
}

// Brute-force oracle: sort by (probability desc, index asc), scan the top k.
double brute_min_ade_k(const PredictionSet & set, const Trajectory & gt, int k)
{
  std::vector<int> order(set.trajectories.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (set.probabilities[a] != set.probabilities[b]) {
      return set.probabilities[a] > set.probabilities[b];
    }
    return a < b;
  });
  double best = 1e300;
  for (int i = 0; i < std::min<int>(k, order.size()); ++i) {
    double total = 0.0;
    for (int j = 0; j < 12; ++j) {
      total += (set.trajectories[order[i]].points[j] - gt.points[j]).norm();
    }
    best = std::min(best, total / 12.0);
  }
  return best;
}

}  // namespace

TEST_CASE("ade examples")
{
  const Trajectory gt = line(2.0);
  CHECK(trajpred::ade(gt, gt) == 0.0);
  CHECK(trajpred::ade(shifted(gt, {0.0, 1.0}), gt) == doctest::Approx(1.0));

  Trajectory last_off = gt;
  last_off.points.back().y += 2.0;
  CHECK(trajpred::ade(last_off, gt) == doctest::Approx(2.0 / 12.0));

  Trajectory shorter = gt;
  shorter.points.pop_back();
  CHECK_THROWS_AS(trajpred::ade(shorter, gt), std::invalid_argument);
}

TEST_CASE("min_ade_k selects by probability with index ties")
{
  const Trajectory gt = line(2.0);
  PredictionSet set;
  set.trajectories = {gt, shifted(gt, {0.0, 3.0})};
  set.probabilities = {0.4, 0.6};
  set.validate();
  CHECK(trajpred::min_ade_k(set, gt, 1) == doctest::Approx(3.0));
  CHECK(trajpred::min_ade_k(set, gt, 2) == doctest::Approx(0.0));
  CHECK(trajpred::min_ade_k(set, gt, 99) == doctest::Approx(0.0));  // k beyond size uses all

  CHECK_THROWS_AS(trajpred::min_ade_k(PredictionSet{}, gt, 1), std::invalid_argument);
  CHECK_THROWS_AS(trajpred::min_ade_k(set, gt, 0), std::invalid_argument);
}

TEST_CASE("min_ade_k matches the brute-force oracle over 500 random sets")
{
  trajpred::Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const PredictionSet set = random_set(rng);
    const Trajectory gt = random_gt(rng);
    const int k = rng.uniform_int(1, 20);
    CHECK(trajpred::min_ade_k(set, gt, k) == brute_min_ade_k(set, gt, k));
  }
}

TEST_CASE("fde uses the most likely mode with lower-index ties")
{
  const Trajectory gt = line(2.0);
  PredictionSet set;
  set.trajectories = {gt, shifted(gt, {3.0, 4.0})};
  set.probabilities = {0.7, 0.3};
  CHECK(trajpred::fde(set, gt) == 0.0);

  set.probabilities = {0.3, 0.7};
  CHECK(trajpred::fde(set, gt) == doctest::Approx(5.0));

  set.probabilities = {0.5, 0.5};  // tie -> index 0
  CHECK(trajpred::fde(set, gt) == 0.0);
}

TEST_CASE("hit rate thresholds on the max pointwise distance")
{
  const Trajectory gt = line(2.0);
  PredictionSet one;
  one.trajectories = {shifted(gt, {0.0, 1.0})};
  one.probabilities = {1.0};

  std::vector<PredictionSet> preds{one};
  std::vector<Trajectory> gts{gt};
  CHECK(trajpred::hit_rate(preds, gts, 1, 2.0) == 1.0);
  CHECK(trajpred::hit_rate(preds, gts, 1, 0.5) == 0.0);
  CHECK(trajpred::hit_rate(preds, gts, 1, 1.0) == 1.0);  // boundary counts as a hit

  PredictionSet miss;
  miss.trajectories = {shifted(gt, {0.0, 9.0})};
  miss.probabilities = {1.0};
  preds.push_back(miss);
  gts.push_back(gt);
  CHECK(trajpred::hit_rate(preds, gts, 1, 2.0) == 0.5);

  CHECK_THROWS_AS(trajpred::hit_rate({}, {}, 1, 2.0), std::invalid_argument);
}

TEST_CASE("mse examples")
{
  const std::vector<double> zeros{0.0, 0.0};
  const std::vector<double> same{1.0, 2.0, 3.0};
  CHECK(trajpred::mse(same, same) == 0.0);
  const std::vector<double> off{3.0, 4.0, 5.0};
  CHECK(trajpred::mse(off, same) == doctest::Approx(4.0));
  const std::vector<double> pair{0.0, 3.0};
  CHECK(trajpred::mse(pair, zeros) == doctest::Approx(4.5));
  CHECK_THROWS_AS(trajpred::mse(pair, same), std::invalid_argument);
  CHECK_THROWS_AS(trajpred::mse({}, {}), std::invalid_argument);
}

TEST_CASE("hitrate curve is nondecreasing and step-shaped for a ranked mode")
{
  const Trajectory gt = line(2.0);
  PredictionSet set;
  set.trajectories = {shifted(gt, {0.0, 9.0}), shifted(gt, {0.0, 8.0}), gt};
  set.probabilities = {0.5, 0.3, 0.2};  // good mode ranks 3rd

  std::vector<PredictionSet> preds{set};
  std::vector<Trajectory> gts{gt};
  const auto curve = trajpred::hitrate_curve(preds, gts, 2.0, 5);
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].second == 0.0);
  CHECK(curve[1].second == 0.0);
  CHECK(curve[2].second == 1.0);
  CHECK(curve[3].second == 1.0);
  CHECK(curve[4].second == 1.0);
  for (size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].second >= curve[i - 1].second);
  }
}

TEST_CASE("metric monotonicity properties on random sets")
{
  trajpred::Rng rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const PredictionSet set = random_set(rng);
    const Trajectory gt = random_gt(rng);

    double prev = 1e300;
    for (int k = 1; k <= static_cast<int>(set.trajectories.size()); ++k) {
      const double v = trajpred::min_ade_k(set, gt, k);
      CHECK(v <= prev);
      prev = v;
    }

    std::vector<PredictionSet> preds{set};
    std::vector<Trajectory> gts{gt};
    double prev_rate = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const double r = trajpred::hit_rate(preds, gts, k, 2.0);
      CHECK(r >= prev_rate);
      prev_rate = r;
    }
    double prev_d = 0.0;
    for (double d : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double r = trajpred::hit_rate(preds, gts, 3, d);
      CHECK(r >= prev_d);
      prev_d = r;
    }
  }
}

TEST_CASE("one-mode minADE_1 equals the mode ADE")
{
  trajpred::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    PredictionSet set;
    set.trajectories = {random_gt(rng)};
    set.probabilities = {1.0};
    const Trajectory gt = random_gt(rng);
    CHECK(trajpred::min_ade_k(set, gt, 1) == trajpred::ade(set.trajectories[0], gt));
  }
}

TEST_CASE("metrics are invariant under a joint 90-degree rotation")
{
  trajpred::Rng rng(55);
  auto rotate = [](const Trajectory & t) {
    Trajectory out = t;
    for (auto & p : out.points) {
      p = {-p.y, p.x};
    }
    return out;
  };
  for (int trial = 0; trial < 100; ++trial) {
    PredictionSet set = random_set(rng, 8);
    const Trajectory gt = random_gt(rng);
    PredictionSet rotated = set;
    for (auto & t : rotated.trajectories) {
      t = rotate(t);
    }
    const Trajectory gt_rot = rotate(gt);
    for (int k : {1, 3, 5}) {
      CHECK(trajpred::min_ade_k(set, gt, k) ==
            doctest::Approx(trajpred::min_ade_k(rotated, gt_rot, k)).epsilon(1e-12));
    }
    CHECK(trajpred::fde(set, gt) == doctest::Approx(trajpred::fde(rotated, gt_rot)).epsilon(1e-12));
    std::vector<PredictionSet> a{set};
    std::vector<PredictionSet> b{rotated};
    std::vector<Trajectory> ga{gt};
    std::vector<Trajectory> gb{gt_rot};
    CHECK(trajpred::hit_rate(a, ga, 3, 2.0) == trajpred::hit_rate(b, gb, 3, 2.0));
  }
}

TEST_CASE("prediction set validation catches bad probability vectors")
{
  const Trajectory gt = line(1.0);
  PredictionSet set;
  set.trajectories = {gt, gt};
  set.probabilities = {0.5, 0.6};
  CHECK_THROWS_AS(set.validate(), std::invalid_argument);
  set.probabilities = {1.2, -0.2};
  CHECK_THROWS_AS(set.validate(), std::invalid_argument);
  set.probabilities = {0.5};
  CHECK_THROWS_AS(set.validate(), std::invalid_argument);
  set.probabilities = {0.5, 0.5};
  CHECK_NOTHROW(set.validate());
}

TEST_CASE("evaluate aggregates per-instance means and serializes")
{
  const Trajectory gt = line(2.0);
  PredictionSet good;
  good.trajectories = {gt};
  good.probabilities = {1.0};
  PredictionSet bad;
  bad.trajectories = {shifted(gt, {0.0, 4.0})};
  bad.probabilities = {1.0};

  std::vector<PredictionSet> preds{good, bad};
  std::vector<Trajectory> gts{gt, gt};
  const trajpred::MetricReport report = trajpred::evaluate(preds, gts);
  CHECK(report.min_ade_1 == doctest::Approx(2.0));
  CHECK(report.fde == doctest::Approx(2.0));
  CHECK(report.hit_rate_5_2m == doctest::Approx(0.5));
  REQUIRE(report.per_instance.size() == 2);
  CHECK(report.per_instance[0].hit_5_2m == 1);
  CHECK(report.per_instance[1].hit_5_2m == 0);
  REQUIRE(report.hitrate_curve_2m.size() == trajpred::kCurveKMax);

  const trajpred::MetricReport loaded = trajpred::MetricReport::from_json(report.to_json());
  CHECK(loaded.min_ade_1 == report.min_ade_1);
  CHECK(loaded.per_instance.size() == report.per_instance.size());
  CHECK(loaded.hitrate_curve_2m == report.hitrate_curve_2m);
}
