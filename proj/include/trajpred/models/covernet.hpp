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

#ifndef TRAJPRED_MODELS_COVERNET_HPP_
#define TRAJPRED_MODELS_COVERNET_HPP_

#include <vector>

#include "trajpred/models/mid_level.hpp"

namespace trajpred::models
{

/// Classification over a fixed trajectory set: encoder features fused with
/// the state vector feed a hidden layer and one logit per set element.
class CoverNetModel : public MidLevelModel
{
public:
  CoverNetModel(const EncoderConfig & config, int set_size, int hidden, Rng & init_rng);

  HeadKind kind() const override { return HeadKind::covernet; }

  ad::Tape::NodeId logits(ad::Tape & tape, const ad::Tensor & raster, const StateVector & state);

  /// Probabilities paired with the fixed set's trajectories, order preserved.
  PredictionSet predict(
    const ad::Tensor & raster, const StateVector & state, const TrajectorySet & set) override;

  /// Cross-entropy against the set element closest to the ground truth.
  ad::Tape::NodeId loss(
    ad::Tape & tape, const ad::Tensor & raster, const StateVector & state, const Trajectory & gt,
    const TrajectorySet & set) override;

  std::vector<ad::Parameter *> params() override;
  TinyEncoder & encoder() override { return encoder_; }
  int set_size() const { return set_size_; }

  /// Metric used to pick the positive label; mean pointwise (ADE) by default.
  MatchMetric label_metric = MatchMetric::mean_pointwise;

private:
  void require_set(const TrajectorySet & set) const;

  TinyEncoder encoder_;
  int set_size_;
  ad::Parameter fc1_w_, fc1_b_, fc2_w_, fc2_b_;
};

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_COVERNET_HPP_
