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

#include "trajpred/autodiff/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace trajpred::ad
{

GradCheckResult check_gradients(
  const std::function<double()> & loss_fn, const std::function<GradMap()> & backward_fn,
  std::span<Parameter * const> params, double h, int max_coords_per_param, uint64_t seed)
{
  const GradMap analytic = backward_fn();
  GradCheckResult result;
  Rng rng(seed);
  for (Parameter * p : params) {
    const Tensor * grad = analytic.find(*p);
    if (grad == nullptr) {
      continue;
    }
    std::vector<int> coords(p->value.size());
    std::iota(coords.begin(), coords.end(), 0);
    if (max_coords_per_param > 0 && p->value.size() > max_coords_per_param) {
      // Seeded partial Fisher-Yates: sample without replacement.
      for (int i = 0; i < max_coords_per_param; ++i) {
        std::swap(coords[i], coords[rng.uniform_int(i, static_cast<int>(coords.size()) - 1)]);
      }
      coords.resize(max_coords_per_param);
    }
    for (int i : coords) {
      const double a = grad->data[i];
      auto rel_at = [&](double step) {
        const double saved = p->value.data[i];
        p->value.data[i] = saved + step;
        const double up = loss_fn();
        p->value.data[i] = saved - step;
        const double down = loss_fn();
        p->value.data[i] = saved;
        const double numeric = (up - down) / (2.0 * step);
        return std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1.0});
      };
      double rel = rel_at(h);
      // A step crossing a relu kink or maxpool tie corrupts the estimate at
      // this h even when the gradient is exact; a genuine bug reproduces at
      // every scale, so re-measure flagged coordinates with smaller steps and
      // keep the best agreement.
      for (double shrink : {0.1, 0.01}) {
        if (rel <= 1e-7) {
          break;
        }
        rel = std::min(rel, rel_at(h * shrink));
      }
      ++result.coords_checked;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst = p->name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return result;
}

}  // namespace trajpred::ad
