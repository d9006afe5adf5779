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

#ifndef TRAJPRED_MODELS_SEQ_REGRESSOR_HPP_
#define TRAJPRED_MODELS_SEQ_REGRESSOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "trajpred/autodiff/tape.hpp"
#include "trajpred/scene.hpp"

namespace trajpred::models
{

constexpr int kCamFeatureDim = 16;
constexpr int kMapFeatureDim = 8;
constexpr double kSpeedScale = 30.0;   // m/s full range of the normalized output
constexpr double kAngleScale = 540.0;  // steering-wheel degrees full range

/// One low-level training row: synthetic per-timestep feature vectors for the
/// observation at t-0.4s and t, plus the regression targets one second ahead.
struct SeqSample
{
  std::vector<double> cam_t0;  // kCamFeatureDim
  std::vector<double> cam_t1;
  std::vector<double> map_t0;  // kMapFeatureDim
  std::vector<double> map_t1;
  double target_speed_mps = 0.0;
  double target_angle_deg = 0.0;
};

/// Derives low-level samples from scene instances: features are seeded random
/// projections of the hidden per-timestep driving state (speed, yaw rate,
/// acceleration) plus noise, so the mapping is learnable but not trivial.
std::vector<SeqSample> make_seq_samples(
  const std::vector<Instance> & instances, uint64_t seed, double feature_noise = 0.05);

/// Two-timestep sequence regressor: per-source encoders, a fusion layer, a
/// gated recurrent cell across the two timesteps, and one regression head per
/// target (speed, steering angle).
class SeqRegressor
{
public:
  explicit SeqRegressor(Rng & init_rng);

  struct Outputs
  {
    ad::Tape::NodeId speed_norm;  // speed / kSpeedScale
    ad::Tape::NodeId angle_norm;  // angle / kAngleScale
  };
  Outputs forward(ad::Tape & tape, const SeqSample & sample);

  /// (speed m/s, steering angle degrees).
  std::pair<double, double> predict(const SeqSample & sample);

  /// Sum of the two normalized-target MSE losses.
  ad::Tape::NodeId loss(ad::Tape & tape, const SeqSample & sample);

  std::vector<ad::Parameter *> params();

private:
  ad::Tape::NodeId encode_step(ad::Tape & tape, const std::vector<double> & cam,
                               const std::vector<double> & map_vec);
  ad::Tape::NodeId gru_step(ad::Tape & tape, ad::Tape::NodeId h, ad::Tape::NodeId x);

  ad::Parameter cam_w_, cam_b_, map_w_, map_b_, fuse_w_, fuse_b_;
  ad::Parameter gru_wr_, gru_ur_, gru_br_;
  ad::Parameter gru_wu_, gru_uu_, gru_bu_;
  ad::Parameter gru_wc_, gru_uc_, gru_bc_;
  ad::Parameter speed_w_, speed_b_, angle_w_, angle_b_;
};

struct SeqTrainResult
{
  double initial_loss = 0.0;
  double final_loss = 0.0;
};

/// Plain seeded SGD over the sample list; returns mean losses of the first
/// and last epoch.
SeqTrainResult train_seq_regressor(
  SeqRegressor & model, const std::vector<SeqSample> & samples, int epochs, double lr,
  uint64_t seed);

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_SEQ_REGRESSOR_HPP_
