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

#include "trajpred/models/mtp.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "trajpred/trajectory_distance.hpp"

namespace trajpred::models
{

Trajectory mode_to_trajectory(const ad::Tensor & mode)
{
  if (mode.size() != 2 * kPredictionSteps) {
    throw std::invalid_argument("mode_to_trajectory: expected 24 values, got " + mode.shape_str());
  }
  Trajectory t;
  t.dt = kStepSeconds;
  for (int i = 0; i < kPredictionSteps; ++i) {
    t.points.push_back({mode.data[2 * i], mode.data[2 * i + 1]});
  }
  return t;
}

ad::Tensor trajectory_to_flat(const Trajectory & t)
{
  ad::Tensor out({2 * static_cast<int>(t.points.size())});
  for (size_t i = 0; i < t.points.size(); ++i) {
    out.data[2 * i] = t.points[i].x;
    out.data[2 * i + 1] = t.points[i].y;
  }
  return out;
}

MTPModel::MTPModel(const EncoderConfig & config, int hidden, Rng & init_rng)
: encoder_(config, init_rng)
{
  if (hidden < 1) {
    throw std::invalid_argument("MTPModel: hidden width must be positive");
  }
  const int in = encoder_.feature_size() + 3;
  const int out = 2 * kPredictionSteps;
  fc1_w_ = {"head.fc1.w", ad::glorot_uniform({hidden, in}, in, hidden, init_rng), true};
  fc1_b_ = {"head.fc1.b", ad::Tensor::zeros({hidden}), true};
  for (int m = 0; m < kMtpModes; ++m) {
    mode_w_[m] = {
      "head.mode" + std::to_string(m) + ".w", ad::glorot_uniform({out, hidden}, hidden, out, init_rng),
      true};
    mode_b_[m] = {"head.mode" + std::to_string(m) + ".b", ad::Tensor::zeros({out}), true};
  }
  logit_w_ = {
    "head.logits.w", ad::glorot_uniform({kMtpModes, hidden}, hidden, kMtpModes, init_rng), true};
  logit_b_ = {"head.logits.b", ad::Tensor::zeros({kMtpModes}), true};
}

ad::Tape::NodeId MTPModel::hidden_node(
  ad::Tape & tape, const ad::Tensor & raster, const StateVector & state)
{
  const auto features = encoder_.forward(tape, raster);
  const auto fused = tape.concat(features, tape.constant(state_tensor(state)));
  return tape.relu(tape.add(tape.matmul(tape.param(fc1_w_), fused), tape.param(fc1_b_)));
}

MTPModel::ForwardNodes MTPModel::forward(
  ad::Tape & tape, const ad::Tensor & raster, const StateVector & state)
{
  const auto hidden = hidden_node(tape, raster, state);
  ForwardNodes nodes{};
  for (int m = 0; m < kMtpModes; ++m) {
    nodes.modes[m] = tape.add(tape.matmul(tape.param(mode_w_[m]), hidden), tape.param(mode_b_[m]));
  }
  nodes.logits = tape.add(tape.matmul(tape.param(logit_w_), hidden), tape.param(logit_b_));
  return nodes;
}

PredictionSet MTPModel::predict(
  const ad::Tensor & raster, const StateVector & state, const TrajectorySet & set)
{
  (void)set;  // the MTP head regresses its own modes
  ad::Tape tape;
  const ForwardNodes nodes = forward(tape, raster, state);
  PredictionSet out;
  for (int m = 0; m < kMtpModes; ++m) {
    out.trajectories.push_back(mode_to_trajectory(tape.value(nodes.modes[m])));
  }
  out.probabilities = softmax_values(tape.value(nodes.logits).data);
  return out;
}

ad::Tape::NodeId MTPModel::loss(
  ad::Tape & tape, const ad::Tensor & raster, const StateVector & state, const Trajectory & gt,
  const TrajectorySet & set)
{
  (void)set;
  require_prediction(gt, "MTPModel::loss ground truth");
  const ForwardNodes nodes = forward(tape, raster, state);
  int best = 0;
  double best_ade = std::numeric_limits<double>::infinity();
  for (int m = 0; m < kMtpModes; ++m) {
    const double d = mean_pointwise_distance(mode_to_trajectory(tape.value(nodes.modes[m])), gt);
    if (d < best_ade) {
      best_ade = d;
      best = m;
    }
  }
  const auto classification = tape.softmax_cross_entropy(nodes.logits, best);
  const auto regression =
    tape.mse_loss(nodes.modes[best], tape.constant(trajectory_to_flat(gt)));
  const auto weighted =
    tape.mul(regression, tape.constant(ad::Tensor::scalar(kMtpRegressionWeight)));
  return tape.add(classification, weighted);
}

std::vector<ad::Parameter *> MTPModel::params()
{
  std::vector<ad::Parameter *> out = encoder_.params();
  out.push_back(&fc1_w_);
  out.push_back(&fc1_b_);
  for (int m = 0; m < kMtpModes; ++m) {
    out.push_back(&mode_w_[m]);
    out.push_back(&mode_b_[m]);
  }
  out.push_back(&logit_w_);
  out.push_back(&logit_b_);
  return out;
}

}  // namespace trajpred::models
