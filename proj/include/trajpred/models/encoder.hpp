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

#ifndef TRAJPRED_MODELS_ENCODER_HPP_
#define TRAJPRED_MODELS_ENCODER_HPP_

#include <array>
#include <vector>

#include "trajpred/autodiff/tape.hpp"
#include "trajpred/raster.hpp"

namespace trajpred::models
{

/// Four conv+relu+pool blocks followed by flatten. Blocks 0..2 form the
/// freezable lower three quarters.
struct EncoderConfig
{
  int image_size = 64;
  int in_channels = 3;
  std::array<int, 4> channels{8, 16, 24, 32};
  std::array<int, 4> kernels{5, 3, 3, 3};

  /// Flattened feature length; throws std::invalid_argument when the spatial
  /// dims do not survive the conv/pool chain.
  int feature_size() const;
};

constexpr int kEncoderBlocks = 4;
constexpr int kFrozenLowerBlocks = 3;  // "lower 3/4" of a 4-block encoder

class TinyEncoder
{
public:
  TinyEncoder(const EncoderConfig & config, Rng & init_rng);

  ad::Tape::NodeId forward(ad::Tape & tape, const ad::Tensor & image);

  std::vector<ad::Parameter *> params();
  std::vector<ad::Parameter *> block_params(int block);
  /// Freeze (or unfreeze) blocks 0..2 as a unit.
  void set_freeze_lower(bool freeze);

  const EncoderConfig & config() const { return config_; }
  int feature_size() const { return feature_size_; }

private:
  EncoderConfig config_;
  int feature_size_ = 0;
  std::array<ad::Parameter, kEncoderBlocks> conv_w_;
  std::array<ad::Parameter, kEncoderBlocks> conv_b_;
};

/// HxWx3 raster -> [3,H,W] network input tensor.
ad::Tensor raster_to_tensor(const Raster & raster);

/// k*90-degree counterclockwise rotation of a [C,H,W] image tensor.
ad::Tensor rotate_tensor90(const ad::Tensor & image, int quarter_turns);

}  // namespace trajpred::models

#endif  // TRAJPRED_MODELS_ENCODER_HPP_
