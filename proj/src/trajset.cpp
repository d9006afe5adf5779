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

#include "trajpred/trajset.hpp"

#include <bit>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "trajpred/hash.hpp"

namespace trajpred
{

namespace
{

using nlohmann::json;

json elements_json(const std::vector<Trajectory> & trajectories)
{
  json out = json::array();
  for (const auto & t : trajectories) {
    json traj = json::array();
    for (const auto & p : t.points) {
      traj.push_back({p.x, p.y});
    }
    out.push_back(std::move(traj));
  }
  return out;
}

}  // namespace

TrajectorySet build_cover(const std::vector<Trajectory> & trajectories, double epsilon)
{
  if (trajectories.empty()) {
    throw std::invalid_argument("build_cover: empty input");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("build_cover: epsilon must be > 0");
  }
  const size_t n = trajectories.size();

  // covers[i] = set of inputs within epsilon of input i, as a bitmask.
  const size_t words = (n + 63) / 64;
  std::vector<uint64_t> covers(n * words, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      if (max_pointwise_distance(trajectories[i], trajectories[j]) <= epsilon) {
        covers[i * words + j / 64] |= uint64_t{1} << (j % 64);
        covers[j * words + i / 64] |= uint64_t{1} << (i % 64);
      }
    }
  }

  std::vector<uint64_t> uncovered(words, ~uint64_t{0});
  if (n % 64 != 0) {
    uncovered[words - 1] = (uint64_t{1} << (n % 64)) - 1;
  }
  auto uncovered_gain = [&](size_t i) {
    int gain = 0;
    for (size_t w = 0; w < words; ++w) {
      gain += std::popcount(covers[i * words + w] & uncovered[w]);
    }
    return gain;
  };
  auto any_uncovered = [&]() {
    for (size_t w = 0; w < words; ++w) {
      if (uncovered[w] != 0) {
        return true;
      }
    }
    return false;
  };

  TrajectorySet set;
  set.epsilon = epsilon;
  set.source_hash = hash_hex(elements_json(trajectories).dump());
  while (any_uncovered()) {
    size_t best = 0;
    int best_gain = -1;
    for (size_t i = 0; i < n; ++i) {
      const int gain = uncovered_gain(i);
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    for (size_t w = 0; w < words; ++w) {
      uncovered[w] &= ~covers[best * words + w];
    }
    set.elements.push_back(trajectories[best]);
  }
  return set;
}

int closest_element(const TrajectorySet & set, const Trajectory & gt, MatchMetric metric)
{
  if (set.elements.empty()) {
    throw std::invalid_argument("closest_element: empty trajectory set");
  }
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < set.size(); ++i) {
    const double d = metric == MatchMetric::mean_pointwise
                       ? mean_pointwise_distance(set.elements[i], gt)
                       : max_pointwise_distance(set.elements[i], gt);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

bool verify_cover(const TrajectorySet & set, const std::vector<Trajectory> & trajectories)
{
  for (const auto & t : trajectories) {
    bool covered = false;
    for (const auto & e : set.elements) {
      if (max_pointwise_distance(e, t) <= set.epsilon) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      return false;
    }
  }
  return true;
}

std::string trajset_to_json(const TrajectorySet & set)
{
  json obj;
  obj["epsilon"] = set.epsilon;
  obj["source_hash"] = set.source_hash;
  obj["elements"] = elements_json(set.elements);
  return obj.dump(1);
}

void save_trajset(const TrajectorySet & set, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write trajectory set: " + path);
  }
  out << trajset_to_json(set) << "\n";
}

TrajectorySet load_trajset(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open trajectory set: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  json obj;
  try {
    obj = json::parse(buf.str());
  } catch (const json::parse_error & e) {
    throw std::runtime_error("trajectory set parse error: " + std::string(e.what()));
  }
  TrajectorySet set;
  set.epsilon = obj.at("epsilon").get<double>();
  set.source_hash = obj.at("source_hash").get<std::string>();
  for (const auto & traj : obj.at("elements")) {
    Trajectory t;
    t.dt = kStepSeconds;
    for (const auto & p : traj) {
      t.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    set.elements.push_back(std::move(t));
  }
  return set;
}

}  // namespace trajpred
