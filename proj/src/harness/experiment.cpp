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

#include "trajpred/harness/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "trajpred/autodiff/checkpoint.hpp"
#include "trajpred/hash.hpp"
#include "trajpred/scene_json.hpp"
#include "trajpred/trajset.hpp"

namespace trajpred::harness
{

namespace
{

using nlohmann::json;

/// Hyperparameter keys that must stay global; naming one inside an arm breaks
/// the "all other factors equal" contract.
const std::set<std::string> kArmForbiddenKeys{
  "lr", "epochs", "head", "hidden", "raster_size", "raster_resolution", "pretrain_task",
  "pretrain_epochs", "pretrain_samples", "pretrain_lr", "dataset", "trajset", "seeds"};

void write_text_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << text;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string & text)
{
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error & e) {
    throw std::runtime_error("experiment config parse error: " + std::string(e.what()));
  }
  ExperimentConfig cfg;
  cfg.dataset_path = obj.at("dataset").get<std::string>();
  cfg.trajset_path = obj.at("trajset").get<std::string>();
  cfg.out_dir = obj.at("out_dir").get<std::string>();
  if (obj.contains("seeds")) {
    cfg.seeds = obj.at("seeds").get<std::vector<uint64_t>>();
  }
  if (obj.contains("head")) {
    cfg.head = models::head_kind_from_string(obj.at("head").get<std::string>());
  }
  cfg.epochs = obj.value("epochs", cfg.epochs);
  cfg.lr = obj.value("lr", cfg.lr);
  cfg.hidden = obj.value("hidden", cfg.hidden);
  cfg.raster_size = obj.value("raster_size", cfg.raster_size);
  cfg.raster_resolution = obj.value("raster_resolution", cfg.raster_resolution);
  if (obj.contains("pretrain_task")) {
    cfg.pretrain_task =
      models::pretrain_task_from_string(obj.at("pretrain_task").get<std::string>());
  }
  cfg.pretrain_epochs = obj.value("pretrain_epochs", cfg.pretrain_epochs);
  cfg.pretrain_samples = obj.value("pretrain_samples", cfg.pretrain_samples);
  cfg.pretrain_lr = obj.value("pretrain_lr", cfg.pretrain_lr);

  if (!obj.contains("arms") || !obj.at("arms").is_array() || obj.at("arms").empty()) {
    throw std::runtime_error("experiment config: need a nonempty \"arms\" array");
  }
  std::set<std::string> ids;
  for (const auto & arm_obj : obj.at("arms")) {
    for (const auto & [key, value] : arm_obj.items()) {
      (void)value;
      if (kArmForbiddenKeys.count(key) > 0) {
        throw std::runtime_error(
          "experiment config: arm \"" + arm_obj.value("id", std::string("?")) + "\" sets \"" +
          key + "\"; arms may differ only in encoder initialization (id, pretrained, freeze_lower)");
      }
      if (key != "id" && key != "pretrained" && key != "freeze_lower") {
        throw std::runtime_error("experiment config: unknown arm key \"" + key + "\"");
      }
    }
    ArmSpec arm;
    arm.id = arm_obj.at("id").get<std::string>();
    arm.pretrained = arm_obj.value("pretrained", false);
    arm.freeze_lower = arm_obj.value("freeze_lower", false);
    if (arm.id.empty() || !ids.insert(arm.id).second) {
      throw std::runtime_error("experiment config: arm ids must be unique and nonempty");
    }
    cfg.arms.push_back(std::move(arm));
  }
  if (cfg.seeds.empty()) {
    throw std::runtime_error("experiment config: need at least one seed");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open experiment config: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string ExperimentConfig::canonical_json() const
{
  json obj;
  obj["dataset"] = dataset_path;
  obj["trajset"] = trajset_path;
  obj["out_dir"] = out_dir;
  obj["seeds"] = seeds;
  obj["head"] = models::to_string(head);
  obj["epochs"] = epochs;
  obj["lr"] = lr;
  obj["hidden"] = hidden;
  obj["raster_size"] = raster_size;
  obj["raster_resolution"] = raster_resolution;
  obj["pretrain_task"] = models::to_string(pretrain_task);
  obj["pretrain_epochs"] = pretrain_epochs;
  obj["pretrain_samples"] = pretrain_samples;
  obj["pretrain_lr"] = pretrain_lr;
  json arms = json::array();
  for (const auto & arm : this->arms) {
    arms.push_back({{"id", arm.id}, {"pretrained", arm.pretrained}, {"freeze_lower", arm.freeze_lower}});
  }
  obj["arms"] = std::move(arms);
  return obj.dump();
}

std::string ExperimentConfig::hash() const { return hash_hex(canonical_json()); }

std::string RunRecord::to_json() const
{
  json obj;
  obj["config_hash"] = config_hash;
  obj["arm"] = arm_id;
  obj["seed"] = seed;
  obj["wall_time_s"] = wall_time_s;
  obj["report"] = json::parse(report.to_json());
  return obj.dump(1);
}

RunRecord RunRecord::from_json(const std::string & text)
{
  const json obj = json::parse(text);
  RunRecord record;
  record.config_hash = obj.at("config_hash").get<std::string>();
  record.arm_id = obj.at("arm").get<std::string>();
  record.seed = obj.at("seed").get<uint64_t>();
  record.wall_time_s = obj.at("wall_time_s").get<double>();
  record.report = MetricReport::from_json(obj.at("report").dump());
  return record;
}

std::vector<RunRecord> run_ablation(const ExperimentConfig & config)
{
  namespace fs = std::filesystem;
  const auto instances = load_scenes(config.dataset_path).instances;
  if (instances.empty()) {
    throw std::runtime_error("run_ablation: dataset is empty");
  }
  const TrajectorySet set = load_trajset(config.trajset_path);

  RasterConfig raster_config;
  raster_config.size = config.raster_size;
  raster_config.meters_per_pixel = config.raster_resolution;
  models::EncoderConfig encoder_config;
  encoder_config.image_size = config.raster_size;

  const auto rows = models::rasterize_instances(instances, Palette{}, raster_config);
  const auto splits = models::split_dataset(instances.size());
  std::vector<models::RasterizedInstance> train_rows;
  std::vector<models::RasterizedInstance> test_rows;
  for (size_t i : splits.train) {
    train_rows.push_back(rows[i]);
  }
  for (size_t i : splits.test) {
    test_rows.push_back(rows[i]);
  }
  if (train_rows.empty() || test_rows.empty()) {
    throw std::runtime_error("run_ablation: dataset too small for a train/test split");
  }

  fs::create_directories(fs::path(config.out_dir) / "runs");
  fs::create_directories(fs::path(config.out_dir) / "checkpoints");

  const bool any_pretrained = std::any_of(
    config.arms.begin(), config.arms.end(), [](const ArmSpec & a) { return a.pretrained; });

  std::vector<RunRecord> records;
  for (uint64_t seed : config.seeds) {
    std::optional<std::vector<ad::Parameter>> pretrained_params;
    if (any_pretrained) {
      models::PretrainOptions popts;
      popts.task = config.pretrain_task;
      popts.epochs = config.pretrain_epochs;
      popts.sample_limit = config.pretrain_samples;
      popts.lr = config.pretrain_lr;
      popts.seed = seed;
      const auto pretrain = models::pretrain_encoder(train_rows, encoder_config, popts);
      pretrained_params = pretrain.encoder_params;
      std::vector<const ad::Parameter *> ptrs;
      for (const auto & p : *pretrained_params) {
        ptrs.push_back(&p);
      }
      ad::save_checkpoint(
        ptrs, (fs::path(config.out_dir) / "checkpoints" /
               ("pretrain_seed" + std::to_string(seed) + ".bin")).string());
    }

    for (const ArmSpec & arm : config.arms) {
      models::FinetuneOptions fopts;
      fopts.head = config.head;
      fopts.freeze_lower = arm.freeze_lower;
      fopts.epochs = config.epochs;
      fopts.lr = config.lr;
      fopts.hidden = config.hidden;
      fopts.seed = seed;

      const auto start = std::chrono::steady_clock::now();
      auto result = models::finetune(
        arm.pretrained ? pretrained_params : std::nullopt, encoder_config, train_rows, test_rows,
        set, fopts);
      const auto elapsed = std::chrono::steady_clock::now() - start;

      RunRecord record;
      record.config_hash = config.hash();
      record.arm_id = arm.id;
      record.seed = seed;
      record.report = result.report;
      record.wall_time_s = std::chrono::duration<double>(elapsed).count();
      records.push_back(record);

      const auto params = result.model->params();
      std::vector<const ad::Parameter *> ptrs(params.begin(), params.end());
      ad::save_checkpoint(
        ptrs, (fs::path(config.out_dir) / "checkpoints" /
               (arm.id + "_seed" + std::to_string(seed) + ".bin")).string());
      write_text_file(
        (fs::path(config.out_dir) / "runs" /
         (arm.id + "_seed" + std::to_string(seed) + ".json")).string(),
        record.to_json() + "\n");
    }
  }
  return records;
}

}  // namespace trajpred::harness
