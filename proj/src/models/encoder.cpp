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

#include "trajpred/models/encoder.hpp"

#include <stdexcept>
#include <string>

namespace trajpred::models
{

int EncoderConfig::feature_size() const
{
  int side = image_size;
  for (int b = 0; b < kEncoderBlocks; ++b) {
    side = side - kernels[b] + 1;
    if (side <= 0 || side % 2 != 0) {
      throw std::invalid_argument(
        "EncoderConfig: image size " + std::to_string(image_size) +
        " does not survive block " + std::to_string(b));
    }
    side /= 2;
  }
  return channels[kEncoderBlocks - 1] * side * side;
}

TinyEncoder::TinyEncoder(const EncoderConfig & config, Rng & init_rng)
: config_(config), feature_size_(config.feature_size())
{
  int in_ch = config.in_channels;
  for (int b = 0; b < kEncoderBlocks; ++b) {
    const int out_ch = config.channels[b];
    const int k = config.kernels[b];
    const int fan_in = in_ch * k * k;
    const int fan_out = out_ch * k * k;
    conv_w_[b].name = "encoder.conv" + std::to_string(b) + ".w";
    conv_w_[b].value = ad::glorot_uniform({out_ch, in_ch, k, k}, fan_in, fan_out, init_rng);
    conv_b_[b].name = "encoder.conv" + std::to_string(b) + ".b";
    conv_b_[b].value = ad::Tensor::zeros({out_ch});
    in_ch = out_ch;
  }
}

ad::Tape::NodeId TinyEncoder::forward(ad::Tape & tape, const ad::Tensor & image)
{
  if (image.shape != std::vector<int>{config_.in_channels, config_.image_size, config_.image_size}) {
    throw std::invalid_argument(
      "TinyEncoder: input shape " + image.shape_str() + " does not match configured raster dims");
  }
  ad::Tape::NodeId x = tape.constant(image);
  for (int b = 0; b < kEncoderBlocks; ++b) {
    x = tape.maxpool2x2(tape.relu(tape.add(tape.conv2d(x, tape.param(conv_w_[b])), tape.param(conv_b_[b]))));
  }
  return tape.flatten(x);
}

std::vector<ad::Parameter *> TinyEncoder::params()
{
  std::vector<ad::Parameter *> out;
  for (int b = 0; b < kEncoderBlocks; ++b) {
    out.push_back(&conv_w_[b]);
    out.push_back(&conv_b_[b]);
  }
  return out;
}

std::vector<ad::Parameter *> TinyEncoder::block_params(int block)
{
  if (block < 0 || block >= kEncoderBlocks) {
    throw std::invalid_argument("TinyEncoder: block index out of range");
  }
  return {&conv_w_[block], &conv_b_[block]};
}

void TinyEncoder::set_freeze_lower(bool freeze)
{
  for (int b = 0; b < kFrozenLowerBlocks; ++b) {
    conv_w_[b].trainable = !freeze;
    conv_b_[b].trainable = !freeze;
  }
}

ad::Tensor raster_to_tensor(const Raster & raster)
{
  ad::Tensor t({3, raster.height, raster.width});
  for (int r = 0; r < raster.height; ++r) {
    for (int c = 0; c < raster.width; ++c) {
      const double * px = raster.at(r, c);
      for (int ch = 0; ch < 3; ++ch) {
        t.data[(static_cast<size_t>(ch) * raster.height + r) * raster.width + c] = px[ch];
      }
    }
  }
  return t;
}

ad::Tensor rotate_tensor90(const ad::Tensor & image, int quarter_turns)
{
  if (image.rank() != 3 || image.shape[1] != image.shape[2]) {
    throw std::invalid_argument("rotate_tensor90: need square [C,H,W], got " + image.shape_str());
  }
  const int channels = image.shape[0];
  const int n = image.shape[1];
  ad::Tensor out = image;
  ad::Tensor in = image;
  for (int turn = 0; turn < ((quarter_turns % 4) + 4) % 4; ++turn) {
    for (int ch = 0; ch < channels; ++ch) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          out.data[(static_cast<size_t>(ch) * n + r) * n + c] =
            in.data[(static_cast<size_t>(ch) * n + c) * n + (n - 1 - r)];
        }
      }
    }
    in = out;
  }
  return in;
}

}  // namespace trajpred::models
