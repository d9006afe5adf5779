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

#ifndef TRAJPRED_AUTODIFF_GRADCHECK_HPP_
#define TRAJPRED_AUTODIFF_GRADCHECK_HPP_

#include <functional>
#include <span>
#include <string>

#include "trajpred/autodiff/tape.hpp"

namespace trajpred::ad
{

struct GradCheckResult
{
  double max_rel_error = 0.0;
  std::string worst;  // "param[i]" of the worst coordinate
  int coords_checked = 0;
};

/// Central finite-difference verification of reverse-mode gradients.
/// `loss_fn` must rebuild the computation from the current parameter values.
/// Checks every coordinate when max_coords_per_param <= 0, otherwise a seeded
/// random sample per parameter. Relative error uses denominator
/// max(|analytic|, |numeric|, 1).
GradCheckResult check_gradients(
  const std::function<double()> & loss_fn, const std::function<GradMap()> & backward_fn,
  std::span<Parameter * const> params, double h = 1e-5, int max_coords_per_param = 0,
  uint64_t seed = 0);

}  // namespace trajpred::ad

#endif  // TRAJPRED_AUTODIFF_GRADCHECK_HPP_
