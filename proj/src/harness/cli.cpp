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

#include "trajpred/harness/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trajpred/autodiff/checkpoint.hpp"
#include "trajpred/baselines.hpp"
#include "trajpred/harness/report.hpp"
#include "trajpred/harness/svg.hpp"
#include "trajpred/scene_json.hpp"

namespace trajpred::harness
{

namespace
{

struct GenArgs
{
  int count = 2000;
  uint64_t seed = 1;
  std::string out;
  double noise = 0.15;
  int min_agents = 1;
  int max_agents = 4;
  double straight = 1.0;
  double turn = 1.0;
  double stop = 1.0;
  double speed_min = 2.0;
  double speed_max = 14.0;
};

void run_gen(const GenArgs & args)
{
  GeneratorConfig cfg;
  cfg.count = args.count;
  cfg.noise_sigma = args.noise;
  cfg.min_agents = args.min_agents;
  cfg.max_agents = args.max_agents;
  cfg.straight_weight = args.straight;
  cfg.turn_weight = args.turn;
  cfg.stop_weight = args.stop;
  cfg.speed_min = args.speed_min;
  cfg.speed_max = args.speed_max;
  const auto instances = generate_synthetic(cfg, args.seed);
  save_scenes(instances, args.out);
  std::cout << "wrote " << instances.size() << " instances to " << args.out << " (hash "
            << dataset_hash(instances) << ")\n";
}

std::vector<Instance> load_dataset(const std::string & path)
{
  const LoadResult result = load_scenes(path);
  if (result.clamp_warnings > 0) {
    std::cerr << "warning: clamped " << result.clamp_warnings << " kinematic fields while loading "
              << path << "\n";
  }
  return result.instances;
}

/// Rebuilds a mid-level model from a checkpoint file: architecture constants
/// come from the flags, weights from the file.
std::unique_ptr<models::MidLevelModel> model_from_checkpoint(
  models::HeadKind head, const std::string & checkpoint_path, int set_size, int hidden,
  int raster_size)
{
  models::EncoderConfig config;
  config.image_size = raster_size;
  Rng rng(0);  // overwritten immediately by the checkpoint
  auto model = models::make_model(head, config, set_size, hidden, rng);
  ad::load_into(model->params(), ad::load_checkpoint(checkpoint_path));
  return model;
}

models::RasterizedInstance rasterize_one(const Instance & inst, int size, double resolution)
{
  RasterConfig config;
  config.size = size;
  config.meters_per_pixel = resolution;
  models::RasterizedInstance row;
  row.raster = models::raster_to_tensor(rasterize(inst.scene, Palette{}, config));
  row.state = StateVector::from_state(inst.scene.target_state());
  row.ground_truth = inst.ground_truth;
  row.agent_count = static_cast<int>(inst.scene.agents.size());
  return row;
}

}  // namespace

int cli_main(int argc, const char * const * argv)
{
  CLI::App app{"multi-modal trajectory prediction toolkit"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------
  GenArgs gen_args;
  CLI::App * gen = app.add_subcommand("gen", "generate a synthetic scene dataset");
  gen->add_option("--count", gen_args.count, "number of instances");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out, "output dataset JSON")->required();
  gen->add_option("--noise", gen_args.noise, "ground-truth noise sigma (m)");
  gen->add_option("--min-agents", gen_args.min_agents, "min agents per scene");
  gen->add_option("--max-agents", gen_args.max_agents, "max agents per scene");
  gen->add_option("--straight", gen_args.straight, "straight maneuver weight");
  gen->add_option("--turn", gen_args.turn, "constant-turn maneuver weight");
  gen->add_option("--stop", gen_args.stop, "stop maneuver weight");
  gen->add_option("--speed-min", gen_args.speed_min, "min initial speed (m/s)");
  gen->add_option("--speed-max", gen_args.speed_max, "max initial speed (m/s)");

  // --- rasterize --------------------------------------------------------
  std::string ras_data;
  std::string ras_out;
  int ras_index = 0;
  int ras_size = 64;
  double ras_resolution = 0.5;
  CLI::App * ras = app.add_subcommand("rasterize", "render one instance to a PNG");
  ras->add_option("--data", ras_data, "dataset JSON")->required();
  ras->add_option("--index", ras_index, "instance index");
  ras->add_option("--out", ras_out, "output PNG path")->required();
  ras->add_option("--size", ras_size, "raster side length in pixels");
  ras->add_option("--resolution", ras_resolution, "meters per pixel");

  // --- trajset ----------------------------------------------------------
  std::string ts_data;
  std::string ts_out;
  double ts_epsilon = 2.0;
  CLI::App * ts = app.add_subcommand("trajset", "build the fixed trajectory set by greedy cover");
  ts->add_option("--data", ts_data, "dataset JSON")->required();
  ts->add_option("--epsilon", ts_epsilon, "coverage radius in meters");
  ts->add_option("--out", ts_out, "output trajectory-set JSON")->required();

  // --- pretrain -----------------------------------------------------------
  std::string pre_data;
  std::string pre_out;
  std::string pre_task = "rotation4";
  int pre_epochs = 3;
  int pre_samples = 400;
  double pre_lr = 0.02;
  uint64_t pre_seed = 1;
  int pre_size = 64;
  double pre_resolution = 0.5;
  CLI::App * pre = app.add_subcommand("pretrain", "pretrain the encoder on an auxiliary task");
  pre->add_option("--data", pre_data, "dataset JSON")->required();
  pre->add_option("--task", pre_task, "rotation4 or agent_count");
  pre->add_option("--epochs", pre_epochs, "training epochs");
  pre->add_option("--samples", pre_samples, "max training rasters");
  pre->add_option("--lr", pre_lr, "learning rate");
  pre->add_option("--seed", pre_seed, "training seed");
  pre->add_option("--out", pre_out, "output encoder checkpoint")->required();
  pre->add_option("--size", pre_size, "raster side length in pixels");
  pre->add_option("--resolution", pre_resolution, "meters per pixel");

  // --- train ---------------------------------------------------------------
  std::string train_config;
  CLI::App * train = app.add_subcommand("train", "run the ablation described by a config file");
  train->add_option("--config", train_config, "experiment config JSON")->required();

  // --- eval -----------------------------------------------------------------
  std::string eval_data;
  std::string eval_trajset;
  std::string eval_checkpoint;
  std::string eval_head = "covernet";
  std::string eval_out;
  std::string eval_split = "test";
  int eval_hidden = 64;
  int eval_size = 64;
  double eval_resolution = 0.5;
  CLI::App * eval = app.add_subcommand("eval", "evaluate a checkpoint on a dataset split");
  eval->add_option("--data", eval_data, "dataset JSON")->required();
  eval->add_option("--trajset", eval_trajset, "trajectory set JSON")->required();
  eval->add_option("--checkpoint", eval_checkpoint, "model checkpoint")->required();
  eval->add_option("--head", eval_head, "covernet or mtp");
  eval->add_option("--out", eval_out, "output metric report JSON")->required();
  eval->add_option("--split", eval_split, "train, val, test or all");
  eval->add_option("--hidden", eval_hidden, "fusion hidden width");
  eval->add_option("--size", eval_size, "raster side length in pixels");
  eval->add_option("--resolution", eval_resolution, "meters per pixel");

  // --- baseline ----------------------------------------------------------
  std::string base_data;
  std::string base_out;
  CLI::App * base = app.add_subcommand("baseline", "evaluate the physics baselines");
  base->add_option("--data", base_data, "dataset JSON")->required();
  base->add_option("--out", base_out, "output CSV")->required();

  // --- report -----------------------------------------------------------
  std::string rep_runs;
  std::string rep_out;
  CLI::App * rep = app.add_subcommand("report", "aggregate run records into a CSV table");
  rep->add_option("--runs", rep_runs, "directory of run record JSON files")->required();
  rep->add_option("--out", rep_out, "output CSV")->required();

  // --- plot ------------------------------------------------------------
  CLI::App * plot = app.add_subcommand("plot", "emit SVG figures");
  plot->require_subcommand(1);

  std::string ov_data;
  std::string ov_trajset;
  std::string ov_head = "covernet";
  std::string ov_out;
  int ov_index = 0;
  int ov_hidden = 64;
  int ov_size = 64;
  double ov_resolution = 0.5;
  std::vector<std::string> ov_checkpoints;
  CLI::App * overlay = plot->add_subcommand("overlay", "prediction overlay for one instance");
  overlay->add_option("--data", ov_data, "dataset JSON")->required();
  overlay->add_option("--index", ov_index, "instance index");
  overlay->add_option("--trajset", ov_trajset, "trajectory set JSON")->required();
  overlay->add_option("--head", ov_head, "covernet or mtp");
  overlay->add_option("--checkpoint", ov_checkpoints, "name=checkpoint.bin (repeatable)");
  overlay->add_option("--out", ov_out, "output SVG")->required();
  overlay->add_option("--hidden", ov_hidden, "fusion hidden width");
  overlay->add_option("--size", ov_size, "raster side length in pixels");
  overlay->add_option("--resolution", ov_resolution, "meters per pixel");

  std::string hr_runs;
  std::string hr_out;
  CLI::App * hitrate = plot->add_subcommand("hitrate", "HitRate-vs-k curves per arm");
  hitrate->add_option("--runs", hr_runs, "directory of run record JSON files")->required();
  hitrate->add_option("--out", hr_out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      run_gen(gen_args);
    } else if (ras->parsed()) {
      const auto instances = load_dataset(ras_data);
      if (ras_index < 0 || static_cast<size_t>(ras_index) >= instances.size()) {
        throw std::runtime_error("rasterize: index out of range");
      }
      RasterConfig config;
      config.size = ras_size;
      config.meters_per_pixel = ras_resolution;
      raster_to_png(rasterize(instances[ras_index].scene, Palette{}, config), ras_out);
      std::cout << "wrote " << ras_out << "\n";
    } else if (ts->parsed()) {
      const auto instances = load_dataset(ts_data);
      std::vector<Trajectory> gts;
      for (const auto & inst : instances) {
        gts.push_back(inst.ground_truth);
      }
      const TrajectorySet set = build_cover(gts, ts_epsilon);
      save_trajset(set, ts_out);
      std::cout << "wrote " << set.size() << " elements (epsilon " << ts_epsilon << ") to "
                << ts_out << "\n";
    } else if (pre->parsed()) {
      const auto instances = load_dataset(pre_data);
      RasterConfig raster_config;
      raster_config.size = pre_size;
      raster_config.meters_per_pixel = pre_resolution;
      models::EncoderConfig encoder_config;
      encoder_config.image_size = pre_size;
      models::PretrainOptions options;
      options.task = models::pretrain_task_from_string(pre_task);
      options.epochs = pre_epochs;
      options.sample_limit = pre_samples;
      options.lr = pre_lr;
      options.seed = pre_seed;
      const auto rows = models::rasterize_instances(instances, Palette{}, raster_config);
      const auto result = models::pretrain_encoder(rows, encoder_config, options);
      std::vector<const ad::Parameter *> ptrs;
      for (const auto & p : result.encoder_params) {
        ptrs.push_back(&p);
      }
      ad::save_checkpoint(ptrs, pre_out);
      std::cout << "pretrained encoder (" << pre_task << ", train accuracy "
                << result.train_accuracy << ") -> " << pre_out << "\n";
    } else if (train->parsed()) {
      const ExperimentConfig config = ExperimentConfig::from_file(train_config);
      const auto records = run_ablation(config);
      for (const auto & record : records) {
        std::cout << record.arm_id << " seed " << record.seed << ": minADE5 "
                  << record.report.min_ade_5 << " (" << record.wall_time_s << " s)\n";
      }
      std::cout << "wrote " << records.size() << " run records under " << config.out_dir << "\n";
    } else if (eval->parsed()) {
      const auto instances = load_dataset(eval_data);
      const TrajectorySet set = load_trajset(eval_trajset);
      auto model = model_from_checkpoint(
        models::head_kind_from_string(eval_head), eval_checkpoint, set.size(), eval_hidden,
        eval_size);
      const auto splits = models::split_dataset(instances.size());
      std::vector<size_t> chosen;
      if (eval_split == "train") {
        chosen = splits.train;
      } else if (eval_split == "val") {
        chosen = splits.val;
      } else if (eval_split == "test") {
        chosen = splits.test;
      } else if (eval_split == "all") {
        for (size_t i = 0; i < instances.size(); ++i) {
          chosen.push_back(i);
        }
      } else {
        throw std::runtime_error("eval: unknown split \"" + eval_split + "\"");
      }
      std::vector<models::RasterizedInstance> rows;
      for (size_t i : chosen) {
        rows.push_back(rasterize_one(instances[i], eval_size, eval_resolution));
      }
      const MetricReport report = models::evaluate_rows(*model, rows, set);
      std::ofstream out(eval_out, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write report: " + eval_out);
      }
      out << report.to_json() << "\n";
      std::cout << eval_split << " minADE1 " << report.min_ade_1 << " minADE5 " << report.min_ade_5
                << " FDE " << report.fde << " HitRate_5_2m " << report.hit_rate_5_2m << "\n";
    } else if (base->parsed()) {
      const auto instances = load_dataset(base_data);
      if (instances.empty()) {
        throw std::runtime_error("baseline: dataset is empty");
      }
      std::vector<PredictionSet> cv_preds;
      std::vector<PredictionSet> oracle_preds;
      std::vector<Trajectory> gts;
      for (const auto & inst : instances) {
        cv_preds.push_back({{constant_velocity_baseline(inst)}, {1.0}});
        oracle_preds.push_back({{physics_oracle(inst)}, {1.0}});
        gts.push_back(inst.ground_truth);
      }
      const MetricReport cv_report = evaluate(cv_preds, gts);
      const MetricReport oracle_report = evaluate(oracle_preds, gts);
      std::ofstream out(base_out, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write baseline CSV: " + base_out);
      }
      out << kReportCsvHeader << "\n";
      out << report_csv_row("constant_velocity", "-", cv_report) << "\n";
      out << report_csv_row("physics_oracle", "-", oracle_report) << "\n";
      std::cout << "constant velocity minADE1 " << cv_report.min_ade_1 << ", physics oracle minADE1 "
                << oracle_report.min_ade_1 << "\n";
    } else if (rep->parsed()) {
      const auto records = load_run_records(rep_runs);
      write_report_csv(records, rep_out);
      std::cout << "wrote report for " << records.size() << " runs to " << rep_out << "\n";
    } else if (overlay->parsed()) {
      const auto instances = load_dataset(ov_data);
      if (ov_index < 0 || static_cast<size_t>(ov_index) >= instances.size()) {
        throw std::runtime_error("plot overlay: index out of range");
      }
      const TrajectorySet set = load_trajset(ov_trajset);
      const auto row = rasterize_one(instances[ov_index], ov_size, ov_resolution);
      std::vector<std::pair<std::string, PredictionSet>> arms;
      for (const std::string & spec : ov_checkpoints) {
        const size_t eq = spec.find('=');
        if (eq == std::string::npos) {
          throw std::runtime_error("plot overlay: expected name=checkpoint.bin, got " + spec);
        }
        auto model = model_from_checkpoint(
          models::head_kind_from_string(ov_head), spec.substr(eq + 1), set.size(), ov_hidden,
          ov_size);
        arms.emplace_back(spec.substr(0, eq), model->predict(row.raster, row.state, set));
      }
      plot_overlay(instances[ov_index], arms, &set, ov_out);
      std::cout << "wrote " << ov_out << "\n";
    } else if (hitrate->parsed()) {
      plot_hitrate_curve(load_run_records(hr_runs), hr_out);
      std::cout << "wrote " << hr_out << "\n";
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace trajpred::harness
