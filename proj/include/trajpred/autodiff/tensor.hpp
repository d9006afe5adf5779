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

#ifndef TRAJPRED_AUTODIFF_TENSOR_HPP_
#define TRAJPRED_AUTODIFF_TENSOR_HPP_

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace trajpred::ad
{

/// Dense row-major tensor of 64-bit floats.
struct Tensor
{
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> shape_);
  Tensor(std::vector<int> shape_, std::vector<double> data_);

  static Tensor zeros(std::vector<int> shape);
  static Tensor full(std::vector<int> shape, double value);
  static Tensor scalar(double value);

  int size() const { return static_cast<int>(data.size()); }
  int rank() const { return static_cast<int>(shape.size()); }
  bool same_shape(const Tensor & o) const { return shape == o.shape; }
  bool all_finite() const;
  std::string shape_str() const;

  double & operator[](int i) { return data[i]; }
  double operator[](int i) const { return data[i]; }
};

int shape_size(const std::vector<int> & shape);

}  // namespace trajpred::ad

#endif  // TRAJPRED_AUTODIFF_TENSOR_HPP_
