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

#include "trajpred/models/seq_regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trajpred/kinematics.hpp"

namespace trajpred::models
{

namespace
{

constexpr int kHiddenDim = 24;
constexpr int kCamEncDim = 16;
constexpr int kMapEncDim = 8;
constexpr int kFusedDim = 24;
constexpr double kWheelbaseMeters = 2.7;
constexpr double kSteeringRatio = 15.0;

/// Hidden driving state at offset t from the prediction timestamp.
std::array<double, 4> hidden_state(const AgentState & s, double t)
{
  return {
    speed_at(s.speed, s.acceleration, t) / kMaxSpeed, s.yaw_rate / kMaxYawRate,
    s.acceleration / kMaxAccel, 1.0};
}

std::vector<double> project(
  const std::vector<double> & matrix, int rows, const std::array<double, 4> & state, double noise,
  Rng & rng)
{
  std::vector<double> out(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < 4; ++c) {
      out[r] += matrix[r * 4 + c] * state[c];
    }
    out[r] += noise * rng.normal();
  }
  return out;
}

double steering_angle_deg(double speed, double yaw_rate)
{
  const double floor_speed = std::max(speed, 0.5);
  return std::atan2(yaw_rate * kWheelbaseMeters, floor_speed) * (180.0 / 3.141592653589793) *
         kSteeringRatio;
}

}  // namespace

std::vector<SeqSample> make_seq_samples(
  const std::vector<Instance> & instances, uint64_t seed, double feature_noise)
{
  Rng rng(seed);
  // Fixed projection matrices shared by the whole dataset.
  std::vector<double> cam_proj(kCamFeatureDim * 4);
  for (double & v : cam_proj) {
    v = rng.uniform(-1.0, 1.0);
  }
  std::vector<double> map_proj(kMapFeatureDim * 4);
  for (double & v : map_proj) {
    v = rng.uniform(-1.0, 1.0);
  }

  std::vector<SeqSample> samples;
  samples.reserve(instances.size());
  for (const auto & inst : instances) {
    const AgentState & s = inst.scene.target_state();
    SeqSample sample;
    const auto state_t0 = hidden_state(s, -0.4);
    const auto state_t1 = hidden_state(s, 0.0);
    sample.cam_t0 = project(cam_proj, kCamFeatureDim, state_t0, feature_noise, rng);
    sample.cam_t1 = project(cam_proj, kCamFeatureDim, state_t1, feature_noise, rng);
    auto map_state = [&](const std::array<double, 4> & st) {
      return std::array<double, 4>{
        st[1], st[0], inst.scene.map.crosswalk.empty() ? 0.0 : 1.0, 1.0};
    };
    sample.map_t0 = project(map_proj, kMapFeatureDim, map_state(state_t0), feature_noise, rng);
    sample.map_t1 = project(map_proj, kMapFeatureDim, map_state(state_t1), feature_noise, rng);
    sample.target_speed_mps = speed_at(s.speed, s.acceleration, 1.0);
    sample.target_angle_deg = steering_angle_deg(s.speed, s.yaw_rate);
    samples.push_back(std::move(sample));
  }
  return samples;
}

SeqRegressor::SeqRegressor(Rng & init_rng)
{
  auto linear = [&](const char * name, int out, int in) {
    return ad::Parameter{name, ad::glorot_uniform({out, in}, in, out, init_rng), true};
  };
  auto bias = [](const char * name, int n) {
    return ad::Parameter{name, ad::Tensor::zeros({n}), true};
  };
  cam_w_ = linear("seq.cam.w", kCamEncDim, kCamFeatureDim);
  cam_b_ = bias("seq.cam.b", kCamEncDim);
  map_w_ = linear("seq.map.w", kMapEncDim, kMapFeatureDim);
  map_b_ = bias("seq.map.b", kMapEncDim);
  fuse_w_ = linear("seq.fuse.w", kFusedDim, kCamEncDim + kMapEncDim);
  fuse_b_ = bias("seq.fuse.b", kFusedDim);
  gru_wr_ = linear("seq.gru.wr", kHiddenDim, kFusedDim);
  gru_ur_ = linear("seq.gru.ur", kHiddenDim, kHiddenDim);
  gru_br_ = bias("seq.gru.br", kHiddenDim);
  gru_wu_ = linear("seq.gru.wu", kHiddenDim, kFusedDim);
  gru_uu_ = linear("seq.gru.uu", kHiddenDim, kHiddenDim);
  gru_bu_ = bias("seq.gru.bu", kHiddenDim);
  gru_wc_ = linear("seq.gru.wc", kHiddenDim, kFusedDim);
  gru_uc_ = linear("seq.gru.uc", kHiddenDim, kHiddenDim);
  gru_bc_ = bias("seq.gru.bc", kHiddenDim);
  speed_w_ = linear("seq.speed.w", 1, kHiddenDim);
  speed_b_ = bias("seq.speed.b", 1);
  angle_w_ = linear("seq.angle.w", 1, kHiddenDim);
  angle_b_ = bias("seq.angle.b", 1);
}

ad::Tape::NodeId SeqRegressor::encode_step(
  ad::Tape & tape, const std::vector<double> & cam, const std::vector<double> & map_vec)
{
  if (cam.size() != static_cast<size_t>(kCamFeatureDim) ||
      map_vec.size() != static_cast<size_t>(kMapFeatureDim)) {
    throw std::invalid_argument("SeqRegressor: feature vector width mismatch");
  }
  const auto cam_in = tape.constant(ad::Tensor({kCamFeatureDim}, cam));
  const auto map_in = tape.constant(ad::Tensor({kMapFeatureDim}, map_vec));
  const auto cam_enc =
    tape.relu(tape.add(tape.matmul(tape.param(cam_w_), cam_in), tape.param(cam_b_)));
  const auto map_enc =
    tape.relu(tape.add(tape.matmul(tape.param(map_w_), map_in), tape.param(map_b_)));
  const auto fused = tape.concat(cam_enc, map_enc);
  return tape.relu(tape.add(tape.matmul(tape.param(fuse_w_), fused), tape.param(fuse_b_)));
}

ad::Tape::NodeId SeqRegressor::gru_step(ad::Tape & tape, ad::Tape::NodeId h, ad::Tape::NodeId x)
{
  auto gate = [&](ad::Parameter & w, ad::Parameter & u, ad::Parameter & b) {
    return tape.add(
      tape.add(tape.matmul(tape.param(w), x), tape.matmul(tape.param(u), h)), tape.param(b));
  };
  const auto reset = tape.sigmoid(gate(gru_wr_, gru_ur_, gru_br_));
  const auto update = tape.sigmoid(gate(gru_wu_, gru_uu_, gru_bu_));
  const auto gated_h = tape.mul(reset, h);
  const auto candidate = tape.tanh(tape.add(
    tape.add(tape.matmul(tape.param(gru_wc_), x), tape.matmul(tape.param(gru_uc_), gated_h)),
    tape.param(gru_bc_)));
  const auto ones = tape.constant(ad::Tensor::full({kHiddenDim}, 1.0));
  const auto minus = tape.constant(ad::Tensor::full({kHiddenDim}, -1.0));
  const auto one_minus_update = tape.add(ones, tape.mul(update, minus));
  return tape.add(tape.mul(update, h), tape.mul(one_minus_update, candidate));
}

SeqRegressor::Outputs SeqRegressor::forward(ad::Tape & tape, const SeqSample & sample)
{
  const auto z0 = encode_step(tape, sample.cam_t0, sample.map_t0);
  const auto z1 = encode_step(tape, sample.cam_t1, sample.map_t1);
  const auto h0 = tape.constant(ad::Tensor::zeros({kHiddenDim}));
  const auto h1 = gru_step(tape, h0, z0);
  const auto h2 = gru_step(tape, h1, z1);
  Outputs out{};
  out.speed_norm = tape.add(tape.matmul(tape.param(speed_w_), h2), tape.param(speed_b_));
  out.angle_norm = tape.add(tape.matmul(tape.param(angle_w_), h2), tape.param(angle_b_));
  return out;
}

std::pair<double, double> SeqRegressor::predict(const SeqSample & sample)
{
  ad::Tape tape;
  const Outputs out = forward(tape, sample);
  return {
    tape.value(out.speed_norm).data[0] * kSpeedScale,
    tape.value(out.angle_norm).data[0] * kAngleScale};
}

ad::Tape::NodeId SeqRegressor::loss(ad::Tape & tape, const SeqSample & sample)
{
  const Outputs out = forward(tape, sample);
  const auto speed_target =
    tape.constant(ad::Tensor::scalar(sample.target_speed_mps / kSpeedScale));
  const auto angle_target =
    tape.constant(ad::Tensor::scalar(sample.target_angle_deg / kAngleScale));
  return tape.add(
    tape.mse_loss(out.speed_norm, speed_target), tape.mse_loss(out.angle_norm, angle_target));
}

std::vector<ad::Parameter *> SeqRegressor::params()
{
  return {&cam_w_, &cam_b_,  &map_w_,  &map_b_,  &fuse_w_,  &fuse_b_,  &gru_wr_,
          &gru_ur_, &gru_br_, &gru_wu_, &gru_uu_, &gru_bu_,  &gru_wc_,  &gru_uc_,
          &gru_bc_, &speed_w_, &speed_b_, &angle_w_, &angle_b_};
}

SeqTrainResult train_seq_regressor(
  SeqRegressor & model, const std::vector<SeqSample> & samples, int epochs, double lr,
  uint64_t seed)
{
  Rng shuffle_rng(seed);
  std::vector<size_t> order(samples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const auto params = model.params();

  SeqTrainResult result;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.uniform_int(0, static_cast<int>(i) - 1)]);
    }
    double total = 0.0;
    for (size_t idx : order) {
      ad::Tape tape;
      const auto loss = model.loss(tape, samples[idx]);
      total += tape.value(loss).data[0];
      const ad::GradMap grads = tape.backward(loss);
      ad::sgd_step(params, grads, lr);
    }
    const double mean = samples.empty() ? 0.0 : total / samples.size();
    if (epoch == 0) {
      result.initial_loss = mean;
    }
    result.final_loss = mean;
  }
  return result;
}

}  // namespace trajpred::models
