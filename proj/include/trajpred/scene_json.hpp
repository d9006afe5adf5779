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

#ifndef TRAJPRED_SCENE_JSON_HPP_
#define TRAJPRED_SCENE_JSON_HPP_

#include <string>
#include <vector>

#include "trajpred/scene.hpp"

namespace trajpred
{

struct LoadResult
{
  std::vector<Instance> instances;
  /// Number of kinematic fields clamped into range while loading.
  int clamp_warnings = 0;
};

/// Parses a scene JSON file (one array of instance objects). Schema errors
/// throw std::runtime_error naming the offending field and record index;
/// out-of-range kinematics are clamped and counted instead.
LoadResult load_scenes(const std::string & path);
LoadResult parse_scenes(const std::string & json_text);

/// Serialization used for files and for dataset fingerprints.
std::string scenes_to_json(const std::vector<Instance> & instances);
void save_scenes(const std::vector<Instance> & instances, const std::string & path);

/// FNV-1a fingerprint of the serialized dataset.
std::string dataset_hash(const std::vector<Instance> & instances);

}  // namespace trajpred

#endif  // TRAJPRED_SCENE_JSON_HPP_
