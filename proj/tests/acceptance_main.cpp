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

// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for everything, or pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trajpred/autodiff/checkpoint.hpp"
#include "trajpred/autodiff/gradcheck.hpp"
#include "trajpred/baselines.hpp"
#include "trajpred/harness/report.hpp"
#include "trajpred/harness/svg.hpp"
#include "trajpred/metrics.hpp"
#include "trajpred/models/seq_regressor.hpp"
#include "trajpred/models/training.hpp"
#include "trajpred/scene_json.hpp"
#include "trajpred/synthetic.hpp"
#include "trajpred/trajset.hpp"

namespace fs = std::filesystem;
using trajpred::GeneratorConfig;
using trajpred::Instance;
using trajpred::PredictionSet;
using trajpred::Trajectory;
using trajpred::TrajectorySet;
using trajpred::ad::GradMap;
using trajpred::ad::Parameter;
using trajpred::ad::Tape;
using trajpred::ad::Tensor;
namespace models = trajpred::models;
namespace harness = trajpred::harness;

namespace
{

struct Check
{
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string & what)
  {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// 1. Physics-oracle dominance over constant velocity.

Check criterion1()
{
  Check check;
  GeneratorConfig cfg;
  cfg.count = 600;
  cfg.noise_sigma = 0.2;  // turning and decelerating maneuvers present
  const auto instances = trajpred::generate_synthetic(cfg, 101);
  double cv_total = 0.0;
  double oracle_total = 0.0;
  for (const auto & inst : instances) {
    const double cv = trajpred::ade(trajpred::constant_velocity_baseline(inst), inst.ground_truth);
    const double oracle = trajpred::physics_oracle_detail(inst).ade;
    check.require(oracle <= cv, "per-instance oracle ADE exceeded CV ADE");
    cv_total += cv;
    oracle_total += oracle;
  }
  const double cv_mean = cv_total / instances.size();
  const double oracle_mean = oracle_total / instances.size();
  check.require(oracle_mean < cv_mean, "oracle mean ADE not strictly below CV mean ADE");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "oracle mean ADE %.3f < CV mean ADE %.3f over %zu instances",
                oracle_mean, cv_mean, instances.size());
  if (check.ok) {
    check.detail = buf;
  }
  return check;
}

// ---------------------------------------------------------------------------
// 2. Metric properties and brute-force agreement, 10,000 randomized trials.

PredictionSet random_set(trajpred::Rng & rng)
{
  const int n = rng.uniform_int(1, 20);
  PredictionSet set;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Trajectory t;
    for (int j = 0; j < 12; ++j) {
      t.points.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
    }
    set.trajectories.push_back(std::move(t));
    const double w = rng.uniform() < 0.25 ? 0.5 : rng.uniform(0.01, 1.0);
    set.probabilities.push_back(w);
    total += w;
  }
  for (double & p : set.probabilities) {
    p /= total;
  }
  return set;
}

Trajectory random_traj(trajpred::Rng & rng)
{
  Trajectory t;
  for (int j = 0; j < 12; ++j) {
    t.points.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
  }
  return t;
}

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
  double best = std::numeric_limits<double>::infinity();
  const int take = std::min<int>(k, static_cast<int>(order.size()));
  for (int i = 0; i < take; ++i) {
    double total = 0.0;
    for (size_t j = 0; j < gt.points.size(); ++j) {
      total += (set.trajectories[order[i]].points[j] - gt.points[j]).norm();
    }
    best = std::min(best, total / static_cast<double>(gt.points.size()));
  }
  return best;
}

bool brute_hit(const PredictionSet & set, const Trajectory & gt, int k, double d)
{
  std::vector<int> order(set.trajectories.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (set.probabilities[a] != set.probabilities[b]) {
      return set.probabilities[a] > set.probabilities[b];
    }
    return a < b;
  });
  const int take = std::min<int>(k, static_cast<int>(order.size()));
  for (int i = 0; i < take; ++i) {
    double worst = 0.0;
    for (size_t j = 0; j < gt.points.size(); ++j) {
      worst = std::max(worst, (set.trajectories[order[i]].points[j] - gt.points[j]).norm());
    }
    if (worst <= d) {
      return true;
    }
  }
  return false;
}

Check criterion2()
{
  Check check;
  trajpred::Rng rng(202);
  int violations = 0;
  const int trials = 10000;
  for (int trial = 0; trial < trials && check.ok; ++trial) {
    const PredictionSet set = random_set(rng);
    const Trajectory gt = random_traj(rng);
    const int n = static_cast<int>(set.trajectories.size());

    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n; ++k) {
      const double v = trajpred::min_ade_k(set, gt, k);
      if (v > prev) {
        ++violations;
      }
      prev = v;
      if (v != brute_min_ade_k(set, gt, k)) {
        check.require(false, "min_ade_k disagreed with the brute-force oracle");
      }
    }

    std::vector<PredictionSet> preds{set};
    std::vector<Trajectory> gts{gt};
    double prev_rate = -1.0;
    for (int k = 1; k <= n; ++k) {
      const double r = trajpred::hit_rate(preds, gts, k, 2.0);
      if (r < prev_rate) {
        ++violations;
      }
      prev_rate = r;
      if (r != (brute_hit(set, gt, k, 2.0) ? 1.0 : 0.0)) {
        check.require(false, "hit_rate disagreed with the brute-force oracle");
      }
    }
    double prev_d = -1.0;
    for (double d : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      const double r = trajpred::hit_rate(preds, gts, 5, d);
      if (r < prev_d) {
        ++violations;
      }
      prev_d = r;
    }
  }
  check.require(violations == 0, "monotonicity violated " + std::to_string(violations) + " times");
  if (check.ok) {
    check.detail = std::to_string(trials) + " randomized trials, zero violations, oracle-exact";
  }
  return check;
}

// ---------------------------------------------------------------------------
// 3. Gradient correctness for every op and every full model.

Parameter rand_param(const std::string & name, std::vector<int> shape, trajpred::Rng & rng)
{
  Parameter p;
  p.name = name;
  p.value = Tensor(shape);
  for (double & v : p.value.data) {
    v = rng.uniform(-2.0, 2.0);
  }
  return p;
}

double op_check(
  const std::function<Tape::NodeId(Tape &, const std::vector<Tape::NodeId> &)> & build,
  std::vector<Parameter> & params)
{
  std::vector<Parameter *> ptrs;
  for (auto & p : params) {
    ptrs.push_back(&p);
  }
  auto loss_value = [&]() {
    Tape tape;
    std::vector<Tape::NodeId> nodes;
    for (auto * p : ptrs) {
      nodes.push_back(tape.param(*p));
    }
    return tape.value(build(tape, nodes)).data[0];
  };
  auto grads = [&]() {
    Tape tape;
    std::vector<Tape::NodeId> nodes;
    for (auto * p : ptrs) {
      nodes.push_back(tape.param(*p));
    }
    return tape.backward(build(tape, nodes));
  };
  return trajpred::ad::check_gradients(loss_value, grads, ptrs).max_rel_error;
}


void jitter_params(const std::vector<Parameter *> & params, uint64_t seed)
{
  // Finite differences need a generic point: zero biases put relu inputs over
  // uniform raster regions exactly on the kink.
  trajpred::Rng rng(seed);
  for (Parameter * p : params) {
    for (double & v : p->value.data) {
      v += rng.uniform(-0.05, 0.05);
    }
  }
}

Check criterion3()
{
  Check check;
  const auto start = std::chrono::steady_clock::now();
  trajpred::Rng rng(303);

  auto weighted = [&](Tape & tape, Tape::NodeId node) {
    Tensor w = tape.value(node);
    trajpred::Rng wr(17);
    for (double & v : w.data) {
      v = wr.uniform(0.5, 1.5);
    }
    return tape.sum(tape.mul(node, tape.constant(std::move(w))));
  };

  struct OpCase
  {
    const char * name;
    std::vector<Parameter> params;
    std::function<Tape::NodeId(Tape &, const std::vector<Tape::NodeId> &)> build;
  };
  std::vector<OpCase> cases;
  cases.push_back({"matmul_mv",
                   {rand_param("A", {4, 3}, rng), rand_param("x", {3}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.matmul(n[0], n[1])); }});
  cases.push_back({"matmul_mm",
                   {rand_param("A", {3, 4}, rng), rand_param("B", {4, 2}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.matmul(n[0], n[1])); }});
  cases.push_back({"add",
                   {rand_param("a", {6}, rng), rand_param("b", {6}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.add(n[0], n[1])); }});
  cases.push_back({"bias_add",
                   {rand_param("a", {2, 3, 3}, rng), rand_param("b", {2}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.add(n[0], n[1])); }});
  cases.push_back({"relu",
                   {rand_param("x", {12}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.relu(n[0])); }});
  cases.push_back({"sigmoid",
                   {rand_param("x", {9}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.sigmoid(n[0])); }});
  cases.push_back({"tanh",
                   {rand_param("x", {9}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.tanh(n[0])); }});
  cases.push_back({"mul",
                   {rand_param("a", {7}, rng), rand_param("b", {7}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.mul(n[0], n[1])); }});
  cases.push_back({"conv2d",
                   {rand_param("img", {2, 6, 6}, rng), rand_param("k", {3, 2, 3, 3}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.conv2d(n[0], n[1])); }});
  cases.push_back({"maxpool2x2",
                   {rand_param("x", {2, 4, 4}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.maxpool2x2(n[0])); }});
  cases.push_back({"flatten",
                   {rand_param("x", {2, 3, 2}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.flatten(n[0])); }});
  cases.push_back({"concat",
                   {rand_param("a", {4}, rng), rand_param("b", {6}, rng)},
                   [&](Tape & t, const auto & n) { return weighted(t, t.concat(n[0], n[1])); }});
  cases.push_back({"softmax_cross_entropy",
                   {rand_param("logits", {9}, rng)},
                   [&](Tape & t, const auto & n) { return t.softmax_cross_entropy(n[0], 4); }});
  cases.push_back({"mse_loss",
                   {rand_param("p", {6}, rng), rand_param("t", {6}, rng)},
                   [&](Tape & t, const auto & n) { return t.mse_loss(n[0], n[1]); }});
  cases.push_back({"sum",
                   {rand_param("x", {5}, rng)},
                   [&](Tape & t, const auto & n) { return t.sum(n[0]); }});
  for (auto & c : cases) {
    const double err = op_check(c.build, c.params);
    check.require(
      err < 1e-6, std::string(c.name) + " rel error " + std::to_string(err) + " >= 1e-6");
  }

  // Full models at the production raster size, sampled coordinates.
  GeneratorConfig cfg;
  cfg.count = 2;
  const auto rows = models::rasterize_instances(trajpred::generate_synthetic(cfg, 71));
  std::vector<Trajectory> gts;
  for (const auto & row : rows) {
    gts.push_back(row.ground_truth);
  }
  const TrajectorySet set = trajpred::build_cover(gts, 2.0);

  auto model_check = [&](models::MidLevelModel & model) {
    auto loss_value = [&]() {
      Tape tape;
      return tape.value(model.loss(tape, rows[0].raster, rows[0].state, rows[0].ground_truth, set))
        .data[0];
    };
    auto grads = [&]() {
      Tape tape;
      return tape.backward(
        model.loss(tape, rows[0].raster, rows[0].state, rows[0].ground_truth, set));
    };
    return trajpred::ad::check_gradients(loss_value, grads, model.params(), 1e-5, 6, 404)
      .max_rel_error;
  };
  {
    trajpred::Rng mr(31);
    models::CoverNetModel covernet(models::EncoderConfig{}, set.size(), 64, mr);
    jitter_params(covernet.params(), 881);
    const double err = model_check(covernet);
    check.require(err < 1e-4, "covernet rel error " + std::to_string(err) + " >= 1e-4");
  }
  {
    trajpred::Rng mr(32);
    models::MTPModel mtp(models::EncoderConfig{}, 64, mr);
    jitter_params(mtp.params(), 882);
    const double err = model_check(mtp);
    check.require(err < 1e-4, "mtp rel error " + std::to_string(err) + " >= 1e-4");
  }
  {
    GeneratorConfig scfg;
    scfg.count = 1;
    const auto samples = models::make_seq_samples(trajpred::generate_synthetic(scfg, 72), 72);
    trajpred::Rng mr(33);
    models::SeqRegressor seq(mr);
    jitter_params(seq.params(), 883);
    auto loss_value = [&]() {
      Tape tape;
      return tape.value(seq.loss(tape, samples[0])).data[0];
    };
    auto grads = [&]() {
      Tape tape;
      return tape.backward(seq.loss(tape, samples[0]));
    };
    const double err =
      trajpred::ad::check_gradients(loss_value, grads, seq.params(), 1e-5, 8, 405).max_rel_error;
    check.require(err < 1e-4, "seq regressor rel error " + std::to_string(err) + " >= 1e-4");
  }

  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(seconds < 60.0, "gradient checks took " + std::to_string(seconds) + " s (>= 60)");
  if (check.ok) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "all ops < 1e-6, all models < 1e-4, %.1f s", seconds);
    check.detail = buf;
  }
  return check;
}

// ---------------------------------------------------------------------------
// 4. Loss identities.

Check criterion4()
{
  Check check;
  {
    Tape tape;
    const auto loss = tape.softmax_cross_entropy(tape.constant(Tensor::zeros({415})), 7);
    const double v = tape.value(loss).data[0];
    check.require(std::abs(v - std::log(415.0)) < 1e-9, "CE(0 logits, K=415) != ln 415");
    check.require(std::abs(v - 6.0283) < 1e-4, "ln 415 not 6.0283 to 4 decimals");
  }
  {
    GeneratorConfig cfg;
    cfg.count = 1;
    const auto rows = models::rasterize_instances(trajpred::generate_synthetic(cfg, 44));
    std::vector<Trajectory> gts{rows[0].ground_truth};
    const TrajectorySet set = trajpred::build_cover(gts, 2.0);
    trajpred::Rng mr(45);
    models::MTPModel mtp(models::EncoderConfig{}, 16, mr);
    const Tensor flat = models::trajectory_to_flat(rows[0].ground_truth);
    for (Parameter * p : mtp.params()) {
      const bool mode_w = p->name.rfind("head.mode", 0) == 0 && p->name.back() == 'w';
      const bool logits = p->name.rfind("head.logits", 0) == 0;
      if (mode_w || logits) {
        for (double & v : p->value.data) {
          v = 0.0;
        }
      } else if (p->name.rfind("head.mode", 0) == 0) {
        p->value.data = flat.data;
      }
    }
    Tape tape;
    const auto loss = mtp.loss(tape, rows[0].raster, rows[0].state, rows[0].ground_truth, set);
    check.require(
      std::abs(tape.value(loss).data[0] - std::log(3.0)) < 1e-9,
      "MTP loss != ln 3 with all modes equal to gt and zero logits");
  }
  if (check.ok) {
    check.detail = "CE(0,415) = ln 415 = 6.0283; MTP identity = ln 3, both within 1e-9";
  }
  return check;
}

// ---------------------------------------------------------------------------
// 5. Cover guarantee and epsilon monotonicity on a 1,000-trajectory corpus.

Check criterion5()
{
  Check check;
  GeneratorConfig cfg;
  cfg.count = 1000;
  cfg.noise_sigma = 0.3;
  const auto instances = trajpred::generate_synthetic(cfg, 505);
  std::vector<Trajectory> gts;
  for (const auto & inst : instances) {
    gts.push_back(inst.ground_truth);
  }
  size_t previous = 0;
  bool first = true;
  std::string sizes;
  for (double eps : {0.5, 1.0, 2.0, 4.0}) {
    const TrajectorySet set = trajpred::build_cover(gts, eps);
    check.require(
      trajpred::verify_cover(set, gts),
      "coverage invariant violated at epsilon " + std::to_string(eps));
    if (!first) {
      check.require(
        set.elements.size() <= previous,
        "|cover| grew when epsilon increased to " + std::to_string(eps));
    }
    previous = set.elements.size();
    first = false;
    sizes += (sizes.empty() ? "" : "/") + std::to_string(set.elements.size());
  }
  if (check.ok) {
    check.detail = "covers verified; sizes " + sizes + " at eps 0.5/1/2/4";
  }
  return check;
}

// ---------------------------------------------------------------------------
// 6. Overfit sanity: both heads reach train minADE1 < 0.1 m within 500 epochs.

Check criterion6()
{
  Check check;
  const auto start = std::chrono::steady_clock::now();
  GeneratorConfig cfg;
  cfg.count = 50;
  cfg.noise_sigma = 0.1;
  const auto rows = models::rasterize_instances(trajpred::generate_synthetic(cfg, 606));
  std::vector<Trajectory> gts;
  for (const auto & row : rows) {
    gts.push_back(row.ground_truth);
  }
  // Tight cover so classification can reach near-zero displacement.
  const TrajectorySet tight = trajpred::build_cover(gts, 0.05);

  for (models::HeadKind head : {models::HeadKind::covernet, models::HeadKind::mtp}) {
    models::FinetuneOptions options;
    options.head = head;
    options.epochs = 500;
    options.lr = head == models::HeadKind::covernet ? 0.05 : 0.02;
    options.hidden = 64;
    options.seed = 12;
    double best = std::numeric_limits<double>::infinity();
    options.after_epoch = [&](int epoch, models::MidLevelModel & model) {
      if ((epoch + 1) % 5 != 0) {
        return false;
      }
      best = models::evaluate_rows(model, rows, tight).min_ade_1;
      return best < 0.1;
    };
    const auto result = models::finetune(std::nullopt, models::EncoderConfig{}, rows, rows, tight, options);
    check.require(
      best < 0.1, std::string(models::to_string(head)) + " train minADE1 " + std::to_string(best) +
                    " after " + std::to_string(result.epochs_run) + " epochs");
    if (check.ok) {
      check.detail += std::string(check.detail.empty() ? "" : "; ") + models::to_string(head) +
                      " minADE1 " + std::to_string(best) + " @ epoch " +
                      std::to_string(result.epochs_run);
    }
  }
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(seconds < 600.0, "overfit runs took " + std::to_string(seconds) + " s (>= 600)");
  return check;
}

// ---------------------------------------------------------------------------
// 7. Ablation directional echo: pretrained+frozen vs scratch over >= 5 seeds.

Check criterion7()
{
  Check check;
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = "acceptance_tmp/ablation";
  fs::remove_all(dir);
  fs::create_directories(dir);

  GeneratorConfig cfg;
  cfg.count = 2000;
  const auto instances = trajpred::generate_synthetic(cfg, 707);
  trajpred::save_scenes(instances, (dir / "data.json").string());
  std::vector<Trajectory> gts;
  for (const auto & inst : instances) {
    gts.push_back(inst.ground_truth);
  }
  trajpred::save_trajset(trajpred::build_cover(gts, 2.0), (dir / "trajset.json").string());

  harness::ExperimentConfig config;
  config.dataset_path = (dir / "data.json").string();
  config.trajset_path = (dir / "trajset.json").string();
  config.out_dir = (dir / "out").string();
  config.seeds = {1, 2, 3, 4, 5};
  config.head = models::HeadKind::covernet;
  config.epochs = 3;
  config.lr = 0.05;
  config.hidden = 64;
  config.pretrain_epochs = 3;
  config.pretrain_samples = 400;
  config.arms = {{"scratch", false, false}, {"pretrained_frozen", true, true}};

  const auto records = harness::run_ablation(config);
  std::vector<double> scratch;
  std::vector<double> pretrained;
  for (const auto & record : records) {
    (record.arm_id == "scratch" ? scratch : pretrained).push_back(record.report.min_ade_5);
  }
  const double scratch_median = harness::median(scratch);
  const double pretrained_median = harness::median(pretrained);
  check.require(
    pretrained_median <= scratch_median * 1.05,
    "pretrained median minADE5 " + std::to_string(pretrained_median) + " > 1.05 * scratch " +
      std::to_string(scratch_median));
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(seconds < 3600.0, "ablation took " + std::to_string(seconds) + " s (>= 3600)");
  if (check.ok) {
    char buf[160];
    std::snprintf(
      buf, sizeof(buf), "median minADE5 pretrained %.3f vs scratch %.3f over 5 seeds, %.0f s",
      pretrained_median, scratch_median, seconds);
    check.detail = buf;
  }
  return check;
}

// ---------------------------------------------------------------------------
// 8. End-to-end determinism: byte-identical artifacts on a rerun.

Check criterion8()
{
  Check check;
  auto pipeline = [&](const fs::path & dir) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    GeneratorConfig cfg;
    cfg.count = 40;
    const auto instances = trajpred::generate_synthetic(cfg, 808);
    trajpred::save_scenes(instances, (dir / "data.json").string());
    std::vector<Trajectory> gts;
    for (const auto & inst : instances) {
      gts.push_back(inst.ground_truth);
    }
    trajpred::save_trajset(trajpred::build_cover(gts, 2.0), (dir / "trajset.json").string());

    harness::ExperimentConfig config;
    config.dataset_path = (dir / "data.json").string();
    config.trajset_path = (dir / "trajset.json").string();
    config.out_dir = (dir / "out").string();
    config.seeds = {9};
    config.epochs = 1;
    config.hidden = 16;
    config.pretrain_epochs = 1;
    config.pretrain_samples = 12;
    config.arms = {{"scratch", false, false}, {"pretrained_frozen", true, true}};
    const auto records = harness::run_ablation(config);
    harness::write_report_csv(records, (dir / "report.csv").string());
    harness::plot_hitrate_curve(records, (dir / "hitrate.svg").string());

    const TrajectorySet set = trajpred::load_trajset((dir / "trajset.json").string());
    PredictionSet cv{{trajpred::constant_velocity_baseline(instances[0])}, {1.0}};
    harness::plot_overlay(instances[0], {{"cv", cv}}, &set, (dir / "overlay.svg").string());
  };

  pipeline("acceptance_tmp/det_a");
  pipeline("acceptance_tmp/det_b");
  for (const char * name :
       {"data.json", "trajset.json", "report.csv", "hitrate.svg", "overlay.svg",
        "out/checkpoints/pretrain_seed9.bin", "out/checkpoints/scratch_seed9.bin",
        "out/checkpoints/pretrained_frozen_seed9.bin"}) {
    const std::string a = read_file((fs::path("acceptance_tmp/det_a") / name).string());
    const std::string b = read_file((fs::path("acceptance_tmp/det_b") / name).string());
    check.require(a == b, std::string(name) + " differs between identical reruns");
  }
  if (check.ok) {
    check.detail = "dataset, trajset, checkpoints, report and SVGs byte-identical across reruns";
  }
  return check;
}

}  // namespace

int main(int argc, char ** argv)
{
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.insert(std::atoi(argv[i]));
  }
  struct Criterion
  {
    int id;
    const char * name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
    {1, "physics-oracle dominance over constant velocity", criterion1},
    {2, "metric monotonicity and brute-force agreement", criterion2},
    {3, "gradient correctness for every op and model", criterion3},
    {4, "loss identities (ln K, ln 3)", criterion4},
    {5, "trajectory-set cover guarantee and monotonicity", criterion5},
    {6, "overfit sanity for both heads", criterion6},
    {7, "ablation directional echo (pretrained vs scratch)", criterion7},
    {8, "end-to-end determinism", criterion8},
  };

  int failures = 0;
  for (const auto & criterion : criteria) {
    if (!wanted.empty() && wanted.count(criterion.id) == 0) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception & e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf(
      "[%s] criterion %d: %s (%.1f s)%s%s\n", check.ok ? "PASS" : "FAIL", criterion.id,
      criterion.name, seconds, check.detail.empty() ? "" : " -- ", check.detail.c_str());
    std::fflush(stdout);
    failures += check.ok ? 0 : 1;
  }
  fs::remove_all("acceptance_tmp");
  return failures == 0 ? 0 : 1;
}
