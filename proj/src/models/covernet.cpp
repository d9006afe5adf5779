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

#include "trajpred/models/covernet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajpred::models
{

const char * to_string(HeadKind k)
{
  return k == HeadKind::covernet ? "covernet" : "mtp";
}

HeadKind head_kind_from_string(const std::string & s)
{
  if (s == "covernet") {
    return HeadKind::covernet;
  }
  if (s == "mtp") {
    return HeadKind::mtp;
  }
  throw std::invalid_argument("unknown head kind: \"" + s + "\"");
}

ad::Tensor state_tensor(const StateVector & state)
{
  const auto n = state.normalized();
  return ad::Tensor({3}, {n[0], n[1], n[2]});
}

std::vector<double> softmax_values(const std::vector<double> & logits)
{
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m);
    z += out[i];
  }
  for (double & v : out) {
    v /= z;
  }
  return out;
}

CoverNetModel::CoverNetModel(const EncoderConfig & config, int set_size, int hidden, Rng & init_rng)
: encoder_(config, init_rng), set_size_(set_size)
{
  if (set_size < 1 || hidden < 1) {
    throw std::invalid_argument("CoverNetModel: set size and hidden width must be positive");
  }
  const int in = encoder_.feature_size() + 3;
  fc1_w_ = {"head.fc1.w", ad::glorot_uniform({hidden, in}, in, hidden, init_rng), true};
  fc1_b_ = {"head.fc1.b", ad::Tensor::zeros({hidden}), true};
  fc2_w_ = {"head.fc2.w", ad::glorot_uniform({set_size, hidden}, hidden, set_size, init_rng), true};
  fc2_b_ = {"head.fc2.b", ad::Tensor::zeros({set_size}), true};
}

ad::Tape::NodeId CoverNetModel::logits(
  ad::Tape & tape, const ad::Tensor & raster, const StateVector & state)
{
  const auto features = encoder_.forward(tape, raster);
  const auto fused = tape.concat(features, tape.constant(state_tensor(state)));
  const auto hidden =
    tape.relu(tape.add(tape.matmul(tape.param(fc1_w_), fused), tape.param(fc1_b_)));
  return tape.add(tape.matmul(tape.param(fc2_w_), hidden), tape.param(fc2_b_));
}

void CoverNetModel::require_set(const TrajectorySet & set) const
{
  if (set.size() != set_size_) {
    throw std::invalid_argument(
      "CoverNetModel: trajectory set size " + std::to_string(set.size()) +
      " does not match head output " + std::to_string(set_size_));
  }
}

PredictionSet CoverNetModel::predict(
  const ad::Tensor & raster, const StateVector & state, const TrajectorySet & set)
{
  require_set(set);
  ad::Tape tape;
  const auto node = logits(tape, raster, state);
  PredictionSet out;
  out.trajectories = set.elements;
  out.probabilities = softmax_values(tape.value(node).data);
  return out;
}

ad::Tape::NodeId CoverNetModel::loss(
  ad::Tape & tape, const ad::Tensor & raster, const StateVector & state, const Trajectory & gt,
  const TrajectorySet & set)
{
  require_set(set);
  const int target = closest_element(set, gt, label_metric);
  return tape.softmax_cross_entropy(logits(tape, raster, state), target);
}

std::vector<ad::Parameter *> CoverNetModel::params()
{
  std::vector<ad::Parameter *> out = encoder_.params();
  out.push_back(&fc1_w_);
  out.push_back(&fc1_b_);
  out.push_back(&fc2_w_);
  out.push_back(&fc2_b_);
  return out;
}

}  // namespace trajpred::models
