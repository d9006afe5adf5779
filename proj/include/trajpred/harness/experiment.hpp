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

#ifndef TRAJPRED_HARNESS_EXPERIMENT_HPP_
#define TRAJPRED_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "trajpred/metrics.hpp"
#include "trajpred/models/training.hpp"

namespace trajpred::harness
{

/// One configuration in the controlled comparison. Arms may differ only in
/// how the encoder is initialized and whether its lower blocks are frozen.
struct ArmSpec
{
  std::string id;
  bool pretrained = false;
  bool freeze_lower = false;
};

struct ExperimentConfig
{
  std::string dataset_path;
  std::string trajset_path;
  std::string out_dir;
  std::vector<uint64_t> seeds{1};
  models::HeadKind head = models::HeadKind::covernet;
  int epochs = 4;
  double lr = 0.05;
  int hidden = 64;
  int raster_size = 64;
  double raster_resolution = 0.5;
  models::PretrainTask pretrain_task = models::PretrainTask::rotation4;
  int pretrain_epochs = 3;
  int pretrain_samples = 400;
  double pretrain_lr = 0.02;
  std::vector<ArmSpec> arms;

  /// Parses and validates the all-else-equal contract: an arm object may
  /// carry only {id, pretrained, freeze_lower}; hyperparameter keys present
  /// on an arm are rejected with a diagnostic.
  static ExperimentConfig from_json_text(const std::string & text);
  static ExperimentConfig from_file(const std::string & path);

  std::string canonical_json() const;
  /// Stable across machines for identical configs.
  std::string hash() const;
};

struct RunRecord
{
  std::string config_hash;
  std::string arm_id;
  uint64_t seed = 0;
  MetricReport report;
  double wall_time_s = 0.0;

  std::string to_json() const;
  static RunRecord from_json(const std::string & text);
};

/// Executes every (arm, seed) cell: shared split, shared head config, only
/// encoder initialization differs. Persists datasets, checkpoints and run
/// records under out_dir and returns the records.
std::vector<RunRecord> run_ablation(const ExperimentConfig & config);

}  // namespace trajpred::harness

#endif  // TRAJPRED_HARNESS_EXPERIMENT_HPP_
