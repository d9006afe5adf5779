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

#ifndef TRAJPRED_MODELS_MTP_HPP_
#define TRAJPRED_MODELS_MTP_HPP_

#include <array>
#include <vector>

#include "trajpred/models/mid_level.hpp"

namespace trajpred::models
{

constexpr int kMtpModes = 3;
/// Weight of the regression term in the MTP loss.
constexpr double kMtpRegressionWeight = 1.0;

/// Multi-mode regression head: 3 trajectories of 12x2 coordinates plus a
/// logit per mode.
class MTPModel : public MidLevelModel
{
public:
  MTPModel(const EncoderConfig & config, int hidden, Rng & init_rng);

  HeadKind kind() const override { return HeadKind::mtp; }

  struct ForwardNodes
  {
    std::array<ad::Tape::NodeId, kMtpModes> modes;  // each [24]
    ad::Tape::NodeId logits;                        // [3]
  };
  ForwardNodes forward(ad::Tape & tape, const ad::Tensor & raster, const StateVector & state);

  PredictionSet predict(
    const ad::Tensor & raster, const StateVector & state, const TrajectorySet & set) override;

  /// Classification loss for the best-matching mode (min ADE, ties toward
  /// the lower index) plus the weighted MSE of that mode's 24 coordinates.
  ad::Tape::NodeId loss(
    ad::Tape & tape, const ad::Tensor & raster, const StateVector & state, const Trajectory & gt,
    const TrajectorySet & set) override;

  std::vector<ad::Parameter *> params() override;
  TinyEncoder & encoder() override { return encoder_; }

private:
  ad::Tape::NodeId hidden_node(ad::Tape & tape, const ad::Tensor & raster, const StateVector & state);

  TinyEncoder encoder_;
  ad::Parameter fc1_w_, fc1_b_;
  std::array<ad::Parameter, kMtpModes> mode_w_;
  std::array<ad::Parameter, kMtpModes> mode_b_;
  ad::Parameter logit_w_, logit_b_;
};

/// Mode tensor [24] -> trajectory of 12 (x, y) points.
Trajectory mode_to_trajectory(const ad::Tensor & mode);
/// Ground truth -> flat [24] tensor for the regression target.
ad::Tensor trajectory_to_flat(const Trajectory & t);

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_MTP_HPP_
