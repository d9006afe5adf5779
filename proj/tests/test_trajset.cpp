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

#include <stdexcept>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "trajpred/rng.hpp"
#include "trajpred/trajset.hpp"

using trajpred::MatchMetric;
using trajpred::Trajectory;
using trajpred::TrajectorySet;
using trajpred::Vec2;

namespace
{

Trajectory straight(double speed, double offset_y = 0.0)
{
  Trajectory t;
  for (int i = 1; i <= 12; ++i) {
    t.points.push_back({speed * 0.5 * i, offset_y});
  }
  return t;
}

Trajectory shifted(const Trajectory & base, Vec2 delta)
{
  Trajectory t = base;
  for (auto & p : t.points) {
    p = p + delta;
  }
  return t;
}

Trajectory random_trajectory(trajpred::Rng & rng)
{
  Trajectory t;
  for (int i = 0; i < 12; ++i) {
    t.points.push_back({rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0)});
  }
  return t;
}

}  // namespace

TEST_CASE("max pointwise distance basics")
{
  const Trajectory a = straight(1.0);
  CHECK(trajpred::max_pointwise_distance(a, a) == 0.0);
  CHECK(trajpred::max_pointwise_distance(a, shifted(a, {0.0, 1.0})) == doctest::Approx(1.0));
  // Speeds 1 and 1.01 m/s diverge fastest at the final point: 12*0.5*0.01.
  CHECK(trajpred::max_pointwise_distance(straight(1.0), straight(1.01)) ==
        doctest::Approx(0.06).epsilon(1e-9));

  Trajectory shorter = a;
  shorter.points.pop_back();
  CHECK_THROWS_AS(trajpred::max_pointwise_distance(a, shorter), std::invalid_argument);
}

TEST_CASE("cover of identical trajectories has one element")
{
  const std::vector<Trajectory> inputs(5, straight(3.0));
  const TrajectorySet set = trajpred::build_cover(inputs, 1.0);
  CHECK(set.elements.size() == 1);
  CHECK(trajpred::verify_cover(set, inputs));
}

TEST_CASE("cover size follows epsilon against the 0.06 m pair")
{
  const std::vector<Trajectory> inputs{straight(1.0), straight(1.01)};
  CHECK(trajpred::build_cover(inputs, 1.0).elements.size() == 1);
  CHECK(trajpred::build_cover(inputs, 0.01).elements.size() == 2);
}

TEST_CASE("pairwise-far inputs all become elements")
{
  std::vector<Trajectory> inputs;
  for (int i = 0; i < 6; ++i) {
    inputs.push_back(straight(2.0, 10.0 * i));  // rows 10 m apart, eps 2
  }
  const TrajectorySet set = trajpred::build_cover(inputs, 2.0);
  CHECK(set.elements.size() == inputs.size());
  CHECK(trajpred::verify_cover(set, inputs));
}

TEST_CASE("empty input and nonpositive epsilon are rejected")
{
  CHECK_THROWS_AS(trajpred::build_cover({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(trajpred::build_cover({straight(1.0)}, 0.0), std::invalid_argument);
}

TEST_CASE("closest element matches brute force on 200 random queries")
{
  trajpred::Rng rng(17);
  std::vector<Trajectory> inputs;
  for (int i = 0; i < 50; ++i) {
    inputs.push_back(random_trajectory(rng));
  }
  TrajectorySet set;
  set.elements = inputs;
  set.epsilon = 1.0;

  for (int trial = 0; trial < 200; ++trial) {
    const Trajectory query = random_trajectory(rng);
    for (MatchMetric metric : {MatchMetric::mean_pointwise, MatchMetric::max_pointwise}) {
      int expected = 0;
      double best = 1e300;
      for (size_t i = 0; i < set.elements.size(); ++i) {
        const double d = metric == MatchMetric::mean_pointwise
                           ? trajpred::mean_pointwise_distance(set.elements[i], query)
                           : trajpred::max_pointwise_distance(set.elements[i], query);
        if (d < best) {
          best = d;
          expected = static_cast<int>(i);
        }
      }
      CHECK(trajpred::closest_element(set, query, metric) == expected);
    }
  }
}

TEST_CASE("closest element ties break toward the lower index")
{
  const Trajectory gt = straight(2.0);
  TrajectorySet set;
  set.elements = {shifted(gt, {0.0, 0.1}), shifted(gt, {0.0, 5.0}), shifted(gt, {0.0, -0.1})};
  // Elements 0 and 2 are equidistant from gt.
  CHECK(trajpred::closest_element(set, gt, MatchMetric::mean_pointwise) == 0);
  CHECK(trajpred::closest_element(set, gt, MatchMetric::max_pointwise) == 0);

  set.elements[0] = gt;
  CHECK(trajpred::closest_element(set, gt, MatchMetric::mean_pointwise) == 0);
}

TEST_CASE("greedy cover is deterministic and epsilon-monotone")
{
  trajpred::Rng rng(23);
  std::vector<Trajectory> inputs;
  for (int i = 0; i < 120; ++i) {
    Trajectory t = straight(rng.uniform(0.5, 10.0), rng.uniform(-5.0, 5.0));
    inputs.push_back(t);
  }
  const TrajectorySet a = trajpred::build_cover(inputs, 2.0);
  const TrajectorySet b = trajpred::build_cover(inputs, 2.0);
  CHECK(trajpred::trajset_to_json(a) == trajpred::trajset_to_json(b));
  CHECK(a.source_hash == b.source_hash);
  CHECK(trajpred::verify_cover(a, inputs));

  size_t previous = 0;
  bool first = true;
  for (double eps : {0.5, 1.0, 2.0, 4.0}) {
    const TrajectorySet set = trajpred::build_cover(inputs, eps);
    CHECK(trajpred::verify_cover(set, inputs));
    if (!first) {
      CHECK(set.elements.size() <= previous);
    }
    previous = set.elements.size();
    first = false;
  }
}

TEST_CASE("no duplicate elements in a built cover")
{
  trajpred::Rng rng(31);
  std::vector<Trajectory> inputs;
  for (int i = 0; i < 40; ++i) {
    inputs.push_back(straight(rng.uniform(0.5, 8.0)));
  }
  inputs.push_back(inputs[0]);
  inputs.push_back(inputs[1]);
  const TrajectorySet set = trajpred::build_cover(inputs, 0.5);
  for (size_t i = 0; i < set.elements.size(); ++i) {
    for (size_t j = i + 1; j < set.elements.size(); ++j) {
      CHECK(trajpred::max_pointwise_distance(set.elements[i], set.elements[j]) > 0.0);
    }
  }
}

TEST_CASE("trajectory set round trips through JSON")
{
  const std::vector<Trajectory> inputs{straight(1.0), straight(4.0), straight(8.0)};
  const TrajectorySet set = trajpred::build_cover(inputs, 0.5);
  const std::string path = "trajset_roundtrip_test.json";
  trajpred::save_trajset(set, path);
  const TrajectorySet loaded = trajpred::load_trajset(path);
  CHECK(loaded.epsilon == set.epsilon);
  CHECK(loaded.source_hash == set.source_hash);
  REQUIRE(loaded.elements.size() == set.elements.size());
  for (size_t i = 0; i < set.elements.size(); ++i) {
    CHECK(trajpred::max_pointwise_distance(loaded.elements[i], set.elements[i]) == 0.0);
  }
  std::remove(path.c_str());
}
