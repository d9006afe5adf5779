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

#ifndef TRAJPRED_AUTODIFF_CHECKPOINT_HPP_
#define TRAJPRED_AUTODIFF_CHECKPOINT_HPP_

#include <span>
#include <string>
#include <vector>

#include "trajpred/autodiff/tape.hpp"

namespace trajpred::ad
{

// Flat little-endian binary: magic, version, parameter count, then per
// parameter: name length, name, shape rank, dims, 64-bit float data.

std::string checkpoint_bytes(std::span<const Parameter * const> params);
void save_checkpoint(std::span<const Parameter * const> params, const std::string & path);
std::vector<Parameter> load_checkpoint(const std::string & path);
std::vector<Parameter> parse_checkpoint(const std::string & bytes);

/// Copies loaded values into `params` by name; throws std::runtime_error on a
/// missing name or shape mismatch.
void load_into(std::span<Parameter * const> params, const std::vector<Parameter> & loaded);

}  // namespace trajpred::ad

#endif  // TRAJPRED_AUTODIFF_CHECKPOINT_HPP_
