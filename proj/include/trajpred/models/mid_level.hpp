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

#ifndef TRAJPRED_MODELS_MID_LEVEL_HPP_
#define TRAJPRED_MODELS_MID_LEVEL_HPP_

#include <string>
#include <vector>

#include "trajpred/autodiff/tape.hpp"
#include "trajpred/metrics.hpp"
#include "trajpred/models/encoder.hpp"
#include "trajpred/trajset.hpp"

namespace trajpred::models
{

enum class HeadKind { covernet, mtp };

const char * to_string(HeadKind k);
HeadKind head_kind_from_string(const std::string & s);

/// Common surface of the two mid-level heads: raster + state vector in,
/// multi-modal prediction out.
class MidLevelModel
{
public:
  virtual ~MidLevelModel() = default;

  virtual HeadKind kind() const = 0;
  virtual PredictionSet predict(
    const ad::Tensor & raster, const StateVector & state, const TrajectorySet & set) = 0;
  virtual ad::Tape::NodeId loss(
    ad::Tape & tape, const ad::Tensor & raster, const StateVector & state, const Trajectory & gt,
    const TrajectorySet & set) = 0;
  virtual std::vector<ad::Parameter *> params() = 0;
  virtual TinyEncoder & encoder() = 0;
};

/// Normalized state vector as a length-3 network input.
ad::Tensor state_tensor(const StateVector & state);

/// Softmax over raw logit values (numerically stable, outside the tape).
std::vector<double> softmax_values(const std::vector<double> & logits);

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_MID_LEVEL_HPP_
