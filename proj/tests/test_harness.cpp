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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "trajpred/harness/cli.hpp"
#include "trajpred/harness/report.hpp"
#include "trajpred/harness/svg.hpp"
#include "trajpred/scene_json.hpp"
#include "trajpred/synthetic.hpp"
#include "trajpred/trajset.hpp"

namespace fs = std::filesystem;
namespace harness = trajpred::harness;
using trajpred::PredictionSet;
using trajpred::Trajectory;

namespace
{

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_cli(const std::vector<std::string> & args)
{
  std::vector<const char *> argv{"trajpred"};
  for (const auto & a : args) {
    argv.push_back(a.c_str());
  }
  return harness::cli_main(static_cast<int>(argv.size()), argv.data());
}

struct TempDir
{
  fs::path path;
  explicit TempDir(const std::string & name) : path(fs::path("harness_test_tmp") / name)
  {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all("harness_test_tmp"); }
  std::string file(const std::string & name) const { return (path / name).string(); }
};

std::string base_config_json(const TempDir & dir, const std::string & extra_arm_keys = "")
{
  return std::string(R"({
    "dataset": ")") + dir.file("data.json") + R"(",
    "trajset": ")" + dir.file("trajset.json") + R"(",
    "out_dir": ")" + dir.file("out") + R"(",
    "seeds": [1, 2, 3],
    "head": "covernet",
    "epochs": 1,
    "lr": 0.05,
    "hidden": 8,
    "raster_size": 48,
    "pretrain_epochs": 1,
    "pretrain_samples": 10,
    "arms": [
      {"id": "scratch"},
      {"id": "pretrained_frozen", "pretrained": true, "freeze_lower": true)" +
         extra_arm_keys + R"(}
    ]
  })";
}

harness::RunRecord record_with(const std::string & arm, uint64_t seed, double minade5)
{
  harness::RunRecord r;
  r.config_hash = "cafe";
  r.arm_id = arm;
  r.seed = seed;
  r.report.min_ade_1 = minade5 + 1.0;
  r.report.min_ade_5 = minade5;
  r.report.min_ade_10 = minade5;
  r.report.fde = 2.0 * minade5;
  r.report.hit_rate_5_2m = 0.5;
  r.report.hitrate_curve_2m = {0.25, 0.5, 1.0};
  return r;
}

}  // namespace

TEST_CASE("experiment config parses and hashes stably")
{
  TempDir dir("config");
  const auto cfg = harness::ExperimentConfig::from_json_text(base_config_json(dir));
  CHECK(cfg.arms.size() == 2);
  CHECK(cfg.seeds == std::vector<uint64_t>{1, 2, 3});
  CHECK(cfg.arms[1].pretrained);
  CHECK(cfg.arms[1].freeze_lower);
  const auto again = harness::ExperimentConfig::from_json_text(base_config_json(dir));
  CHECK(cfg.hash() == again.hash());
}

TEST_CASE("arms differing in hyperparameters are rejected with a diagnostic")
{
  TempDir dir("contract");
  CHECK_THROWS_WITH_AS(
    harness::ExperimentConfig::from_json_text(base_config_json(dir, ", \"lr\": 0.1")),
    doctest::Contains("encoder initialization"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
    harness::ExperimentConfig::from_json_text(base_config_json(dir, ", \"epochs\": 9")),
    doctest::Contains("epochs"), std::runtime_error);

  // Duplicate arm ids are rejected too.
  std::string dup = base_config_json(dir);
  const auto at = dup.find("pretrained_frozen");
  dup.replace(at, std::string("pretrained_frozen").size(), "scratch");
  CHECK_THROWS_AS(harness::ExperimentConfig::from_json_text(dup), std::runtime_error);
}

TEST_CASE("run_ablation yields one record per (arm, seed) cell")
{
  TempDir dir("ablation");
  trajpred::GeneratorConfig gen;
  gen.count = 30;
  const auto instances = trajpred::generate_synthetic(gen, 42);
  trajpred::save_scenes(instances, dir.file("data.json"));
  std::vector<Trajectory> gts;
  for (const auto & inst : instances) {
    gts.push_back(inst.ground_truth);
  }
  trajpred::save_trajset(trajpred::build_cover(gts, 2.0), dir.file("trajset.json"));

  const auto cfg = harness::ExperimentConfig::from_json_text(base_config_json(dir));
  const auto records = harness::run_ablation(cfg);
  REQUIRE(records.size() == 6);  // 2 arms x 3 seeds
  int scratch = 0;
  for (const auto & r : records) {
    CHECK(r.config_hash == cfg.hash());
    scratch += r.arm_id == "scratch" ? 1 : 0;
    CHECK_FALSE(r.report.per_instance.empty());
  }
  CHECK(scratch == 3);
  CHECK(fs::exists(dir.file("out") + "/runs/scratch_seed1.json"));
  CHECK(fs::exists(dir.file("out") + "/checkpoints/pretrained_frozen_seed3.bin"));

  // Round trip a persisted record.
  const auto loaded = harness::load_run_records(dir.file("out") + "/runs");
  REQUIRE(loaded.size() == 6);
  CHECK(loaded.front().config_hash == cfg.hash());

  // Report: the median row must equal the independently computed medians.
  const std::string csv = harness::report_csv(loaded);
  auto column_median = [&](auto getter) {
    std::vector<double> values;
    for (const auto & r : loaded) {
      if (r.arm_id == "scratch") {
        values.push_back(getter(r.report));
      }
    }
    return harness::median(values);
  };
  trajpred::MetricReport med;
  med.min_ade_1 = column_median([](const trajpred::MetricReport & m) { return m.min_ade_1; });
  med.min_ade_5 = column_median([](const trajpred::MetricReport & m) { return m.min_ade_5; });
  med.min_ade_10 = column_median([](const trajpred::MetricReport & m) { return m.min_ade_10; });
  med.fde = column_median([](const trajpred::MetricReport & m) { return m.fde; });
  med.hit_rate_5_2m =
    column_median([](const trajpred::MetricReport & m) { return m.hit_rate_5_2m; });
  CHECK(csv.find(trajpred::report_csv_row("scratch", "median", med)) != std::string::npos);
}

TEST_CASE("median handles odd and even counts")
{
  CHECK(harness::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(harness::median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(harness::median({}), std::invalid_argument);
}

TEST_CASE("report csv is deterministic and sorted")
{
  const std::vector<harness::RunRecord> records{
    record_with("b_arm", 2, 0.4), record_with("a_arm", 1, 0.3), record_with("b_arm", 1, 0.2)};
  const std::string a = harness::report_csv(records);
  const std::string b = harness::report_csv(records);
  CHECK(a == b);
  CHECK(a.find("a_arm,1") < a.find("b_arm,1"));
  CHECK(a.find("b_arm,1") < a.find("b_arm,2"));
  CHECK(a.find("arm,seed,minade1,minade5,minade10,fde,hitrate_5_2m") == 0);
}

TEST_CASE("overlay svg shares coordinates with the ground truth polyline")
{
  trajpred::GeneratorConfig gen;
  gen.count = 1;
  const auto instances = trajpred::generate_synthetic(gen, 9);
  const Trajectory & gt = instances[0].ground_truth;

  PredictionSet exact;
  exact.trajectories = {gt};
  exact.probabilities = {1.0};

  const std::string svg =
    harness::overlay_svg(instances[0], {{"perfect", exact}}, nullptr);
  const std::string gt_points = harness::svg_polyline_points(gt);
  // The arm's polyline and the ground truth polyline carry identical points.
  size_t first = svg.find(gt_points);
  REQUIRE(first != std::string::npos);
  size_t second = svg.find(gt_points, first + 1);
  CHECK(second != std::string::npos);
  CHECK(svg.find("perfect") != std::string::npos);  // legend entry

  // Empty arm list still renders ground truth and background.
  std::vector<Trajectory> gts{gt};
  const trajpred::TrajectorySet set = trajpred::build_cover(gts, 2.0);
  const std::string bare = harness::overlay_svg(instances[0], {}, &set);
  CHECK(bare.find(gt_points) != std::string::npos);
  CHECK(bare.find("#cccccc") != std::string::npos);

  // Deterministic bytes.
  CHECK(harness::overlay_svg(instances[0], {{"perfect", exact}}, nullptr) == svg);
}

TEST_CASE("hitrate curve svg plots the stored per-k values")
{
  harness::RunRecord perfect = record_with("perfect", 1, 0.0);
  perfect.report.hitrate_curve_2m = {1.0, 1.0, 1.0};
  const std::string svg = harness::hitrate_curve_svg({perfect});
  // A perfect arm is a horizontal line at the top of the axis (y = 24.00 for
  // every k).
  CHECK(svg.find("points=\"48.00,24.00 252.00,24.00 456.00,24.00\"") != std::string::npos);
  CHECK(svg.find("perfect") != std::string::npos);

  harness::RunRecord other = record_with("other", 1, 0.5);
  const std::string two = harness::hitrate_curve_svg({perfect, other});
  CHECK(two.find("perfect") != std::string::npos);
  CHECK(two.find("other") != std::string::npos);  // two legend entries
}

TEST_CASE("cli exit codes: unknown flags 2, missing files 1, success 0")
{
  CHECK(run_cli({"gen", "--nonsense"}) == 2);
  CHECK(run_cli({"definitely_not_a_subcommand"}) == 2);
  CHECK(run_cli({"baseline", "--data", "missing.json", "--out", "x.csv"}) == 1);
  CHECK(run_cli({"report", "--runs", "no_such_dir", "--out", "x.csv"}) == 1);

  TempDir dir("cli");
  CHECK(
    run_cli({"gen", "--count", "5", "--seed", "3", "--out", dir.file("a.json")}) == 0);
  CHECK(run_cli({"gen", "--count", "5", "--seed", "3", "--out", dir.file("b.json")}) == 0);
  CHECK(read_file(dir.file("a.json")) == read_file(dir.file("b.json")));

  CHECK(run_cli({"baseline", "--data", dir.file("a.json"), "--out", dir.file("base.csv")}) == 0);
  const std::string csv = read_file(dir.file("base.csv"));
  CHECK(csv.find("constant_velocity") != std::string::npos);
  CHECK(csv.find("physics_oracle") != std::string::npos);

  CHECK(run_cli({"rasterize", "--data", dir.file("a.json"), "--index", "0", "--out",
                 dir.file("r.png"), "--size", "48"}) == 0);
  CHECK(fs::exists(dir.file("r.png")));

  CHECK(run_cli({"trajset", "--data", dir.file("a.json"), "--epsilon", "2", "--out",
                 dir.file("ts.json")}) == 0);
  CHECK_NOTHROW(trajpred::load_trajset(dir.file("ts.json")));
}
