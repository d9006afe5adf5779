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

#include "trajpred/autodiff/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace trajpred::ad
{

int shape_size(const std::vector<int> & shape)
{
  int n = 1;
  for (int d : shape) {
    if (d <= 0) {
      throw std::invalid_argument("Tensor: nonpositive dimension");
    }
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<int> shape_) : shape(std::move(shape_)), data(shape_size(shape), 0.0) {}

Tensor::Tensor(std::vector<int> shape_, std::vector<double> data_)
: shape(std::move(shape_)), data(std::move(data_))
{
  if (static_cast<int>(data.size()) != shape_size(shape)) {
    throw std::invalid_argument(
      "Tensor: data length " + std::to_string(data.size()) + " does not match shape " + shape_str());
  }
}

Tensor Tensor::zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

Tensor Tensor::full(std::vector<int> shape, double value)
{
  Tensor t(std::move(shape));
  for (double & v : t.data) {
    v = value;
  }
  return t;
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

bool Tensor::all_finite() const
{
  for (double v : data) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

std::string Tensor::shape_str() const
{
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) {
      s += ",";
    }
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace trajpred::ad
