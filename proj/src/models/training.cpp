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

#include "trajpred/models/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trajpred/autodiff/checkpoint.hpp"
#include "trajpred/hash.hpp"

namespace trajpred::models
{

namespace
{

void shuffle_indices(std::vector<size_t> & order, Rng & rng)
{
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_int(0, static_cast<int>(i) - 1)]);
  }
}

}  // namespace

Split split_of(uint64_t index)
{
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((index >> (8 * i)) & 0xff);
  }
  const uint64_t h = fnv1a64(std::string_view(bytes, 8));
  const uint64_t bucket = h % 100;
  if (bucket < 60) {
    return Split::train;
  }
  if (bucket < 80) {
    return Split::val;
  }
  return Split::test;
}

SplitIndices split_dataset(size_t count)
{
  SplitIndices out;
  for (size_t i = 0; i < count; ++i) {
    switch (split_of(i)) {
      case Split::train:
        out.train.push_back(i);
        break;
      case Split::val:
        out.val.push_back(i);
        break;
      case Split::test:
        out.test.push_back(i);
        break;
    }
  }
  return out;
}

std::vector<RasterizedInstance> rasterize_instances(
  const std::vector<Instance> & instances, const Palette & palette, const RasterConfig & config)
{
  std::vector<RasterizedInstance> rows;
  rows.reserve(instances.size());
  for (const auto & inst : instances) {
    RasterizedInstance row;
    row.raster = raster_to_tensor(rasterize(inst.scene, palette, config));
    row.state = StateVector::from_state(inst.scene.target_state());
    row.ground_truth = inst.ground_truth;
    row.agent_count = static_cast<int>(inst.scene.agents.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

const char * to_string(PretrainTask t)
{
  return t == PretrainTask::rotation4 ? "rotation4" : "agent_count";
}

PretrainTask pretrain_task_from_string(const std::string & s)
{
  if (s == "rotation4") {
    return PretrainTask::rotation4;
  }
  if (s == "agent_count") {
    return PretrainTask::agent_count;
  }
  throw std::invalid_argument("unknown pretrain task: \"" + s + "\"");
}

PretrainResult pretrain_encoder(
  const std::vector<RasterizedInstance> & pool, const EncoderConfig & config,
  const PretrainOptions & options)
{
  if (pool.empty()) {
    throw std::invalid_argument("pretrain_encoder: empty raster pool");
  }
  Rng master(options.seed);
  Rng init_rng = master.fork(0);
  Rng task_rng = master.fork(1);
  Rng shuffle_rng = master.fork(2);

  TinyEncoder encoder(config, init_rng);
  const int feature = encoder.feature_size();
  const bool rotation = options.task == PretrainTask::rotation4;
  const int head_out = rotation ? 4 : 1;
  ad::Parameter head_w{
    "pretrain.head.w", ad::glorot_uniform({head_out, feature}, feature, head_out, init_rng), true};
  ad::Parameter head_b{"pretrain.head.b", ad::Tensor::zeros({head_out}), true};

  const size_t rows = std::min<size_t>(pool.size(), static_cast<size_t>(options.sample_limit));
  struct Row
  {
    ad::Tensor image;
    int label;      // rotation class, or agent count
  };
  std::vector<Row> data;
  data.reserve(rows);
  for (size_t i = 0; i < rows; ++i) {
    Row row;
    if (rotation) {
      row.label = task_rng.uniform_int(0, 3);
      row.image = rotate_tensor90(pool[i].raster, row.label);
    } else {
      row.label = pool[i].agent_count;
      row.image = pool[i].raster;
    }
    data.push_back(std::move(row));
  }

  std::vector<ad::Parameter *> params = encoder.params();
  params.push_back(&head_w);
  params.push_back(&head_b);

  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle_indices(order, shuffle_rng);
    for (size_t idx : order) {
      ad::Tape tape;
      const auto features = encoder.forward(tape, data[idx].image);
      const auto out =
        tape.add(tape.matmul(tape.param(head_w), features), tape.param(head_b));
      ad::Tape::NodeId loss;
      if (rotation) {
        loss = tape.softmax_cross_entropy(out, data[idx].label);
      } else {
        loss = tape.mse_loss(
          out, tape.constant(ad::Tensor::scalar(static_cast<double>(data[idx].label) / 8.0)));
      }
      const ad::GradMap grads = tape.backward(loss);
      ad::sgd_step(params, grads, options.lr);
    }
  }

  int correct = 0;
  for (const Row & row : data) {
    ad::Tape tape;
    const auto features = encoder.forward(tape, row.image);
    const auto out = tape.add(tape.matmul(tape.param(head_w), features), tape.param(head_b));
    const ad::Tensor & v = tape.value(out);
    if (rotation) {
      const int pred = static_cast<int>(
        std::max_element(v.data.begin(), v.data.end()) - v.data.begin());
      correct += pred == row.label ? 1 : 0;
    } else {
      correct += std::abs(v.data[0] * 8.0 - row.label) <= 0.5 ? 1 : 0;
    }
  }

  PretrainResult result;
  result.train_accuracy = data.empty() ? 0.0 : static_cast<double>(correct) / data.size();
  for (const ad::Parameter * p : encoder.params()) {
    result.encoder_params.push_back(*p);
  }
  return result;
}

std::unique_ptr<MidLevelModel> make_model(
  HeadKind head, const EncoderConfig & config, int set_size, int hidden, Rng & init_rng)
{
  if (head == HeadKind::covernet) {
    return std::make_unique<CoverNetModel>(config, set_size, hidden, init_rng);
  }
  return std::make_unique<MTPModel>(config, hidden, init_rng);
}

std::vector<PredictionSet> predict_rows(
  MidLevelModel & model, const std::vector<RasterizedInstance> & rows, const TrajectorySet & set)
{
  std::vector<PredictionSet> out;
  out.reserve(rows.size());
  for (const auto & row : rows) {
    out.push_back(model.predict(row.raster, row.state, set));
  }
  return out;
}

MetricReport evaluate_rows(
  MidLevelModel & model, const std::vector<RasterizedInstance> & rows, const TrajectorySet & set)
{
  if (rows.empty()) {
    throw std::invalid_argument("evaluate_rows: empty evaluation split");
  }
  const std::vector<PredictionSet> preds = predict_rows(model, rows, set);
  std::vector<Trajectory> gts;
  gts.reserve(rows.size());
  for (const auto & row : rows) {
    gts.push_back(row.ground_truth);
  }
  return evaluate(preds, gts);
}

FinetuneResult finetune(
  const std::optional<std::vector<ad::Parameter>> & encoder_init, const EncoderConfig & config,
  const std::vector<RasterizedInstance> & train_rows,
  const std::vector<RasterizedInstance> & eval_rows, const TrajectorySet & set,
  const FinetuneOptions & options)
{
  if (train_rows.empty()) {
    throw std::invalid_argument("finetune: empty training split");
  }
  Rng master(options.seed);
  Rng init_rng = master.fork(0);
  Rng shuffle_rng = master.fork(1);

  FinetuneResult result;
  result.model = make_model(options.head, config, set.size(), options.hidden, init_rng);
  if (auto * covernet = dynamic_cast<CoverNetModel *>(result.model.get())) {
    covernet->label_metric = options.covernet_label_metric;
  }
  if (encoder_init.has_value()) {
    const auto encoder_params = result.model->encoder().params();
    ad::load_into(encoder_params, *encoder_init);
  }
  result.model->encoder().set_freeze_lower(options.freeze_lower);

  const std::vector<ad::Parameter *> params = result.model->params();
  std::vector<size_t> order(train_rows.size());
  std::iota(order.begin(), order.end(), size_t{0});
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle_indices(order, shuffle_rng);
    for (size_t idx : order) {
      ad::Tape tape;
      const auto loss = result.model->loss(
        tape, train_rows[idx].raster, train_rows[idx].state, train_rows[idx].ground_truth, set);
      const ad::GradMap grads = tape.backward(loss);
      ad::sgd_step(params, grads, options.lr);
    }
    result.epochs_run = epoch + 1;
    if (options.after_epoch && options.after_epoch(epoch, *result.model)) {
      break;
    }
  }

  if (!eval_rows.empty()) {
    result.report = evaluate_rows(*result.model, eval_rows, set);
  }
  return result;
}

}  // namespace trajpred::models
