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

#ifndef TRAJPRED_MODELS_TRAINING_HPP_
#define TRAJPRED_MODELS_TRAINING_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trajpred/models/covernet.hpp"
#include "trajpred/models/mtp.hpp"
#include "trajpred/synthetic.hpp"

namespace trajpred::models
{

// ---------------------------------------------------------------------------
// Dataset split: 60/20/20 by instance index hash, stable across machines.

enum class Split { train, val, test };

Split split_of(uint64_t index);

struct SplitIndices
{
  std::vector<size_t> train;
  std::vector<size_t> val;
  std::vector<size_t> test;
};

SplitIndices split_dataset(size_t count);

// ---------------------------------------------------------------------------
// Rasterized training rows.

struct RasterizedInstance
{
  ad::Tensor raster;  // [3,H,W]
  StateVector state;
  Trajectory ground_truth;
  int agent_count = 0;
};

std::vector<RasterizedInstance> rasterize_instances(
  const std::vector<Instance> & instances, const Palette & palette = Palette{},
  const RasterConfig & config = RasterConfig{});

// ---------------------------------------------------------------------------
// Auxiliary pretraining of the encoder (stand-in for large-scale pretrained
// backbones): classify the raster's quarter-turn rotation, or regress the
// scene's agent count.

enum class PretrainTask { rotation4, agent_count };

const char * to_string(PretrainTask t);
PretrainTask pretrain_task_from_string(const std::string & s);

struct PretrainOptions
{
  PretrainTask task = PretrainTask::rotation4;
  int epochs = 3;
  double lr = 0.02;
  int sample_limit = 500;  // rows drawn from the provided pool
  uint64_t seed = 0;
};

struct PretrainResult
{
  std::vector<ad::Parameter> encoder_params;
  /// rotation4: fraction of training rows classified correctly after the
  /// last epoch. agent_count: fraction within half an agent of the label.
  double train_accuracy = 0.0;
};

PretrainResult pretrain_encoder(
  const std::vector<RasterizedInstance> & pool, const EncoderConfig & config,
  const PretrainOptions & options);

// ---------------------------------------------------------------------------
// Fine-tuning of a head over a fresh or pretrained encoder.

struct FinetuneOptions
{
  HeadKind head = HeadKind::covernet;
  bool freeze_lower = false;  // freeze encoder blocks 0..2
  int epochs = 4;
  double lr = 0.05;
  int hidden = 64;
  uint64_t seed = 0;
  MatchMetric covernet_label_metric = MatchMetric::mean_pointwise;
  /// Invoked after every epoch; return true to stop early.
  std::function<bool(int epoch, MidLevelModel & model)> after_epoch;
};

struct FinetuneResult
{
  std::unique_ptr<MidLevelModel> model;
  MetricReport report;  // evaluated on `eval_rows`
  int epochs_run = 0;
};

std::unique_ptr<MidLevelModel> make_model(
  HeadKind head, const EncoderConfig & config, int set_size, int hidden, Rng & init_rng);

/// The training loop consumes seeded randomness identically for every arm;
/// only the encoder initialization differs when `encoder_init` is given.
FinetuneResult finetune(
  const std::optional<std::vector<ad::Parameter>> & encoder_init, const EncoderConfig & config,
  const std::vector<RasterizedInstance> & train_rows,
  const std::vector<RasterizedInstance> & eval_rows, const TrajectorySet & set,
  const FinetuneOptions & options);

/// Model predictions over rows (order preserved).
std::vector<PredictionSet> predict_rows(
  MidLevelModel & model, const std::vector<RasterizedInstance> & rows, const TrajectorySet & set);

MetricReport evaluate_rows(
  MidLevelModel & model, const std::vector<RasterizedInstance> & rows, const TrajectorySet & set);

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_TRAINING_HPP_
