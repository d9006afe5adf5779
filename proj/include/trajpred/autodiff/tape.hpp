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

#ifndef TRAJPRED_AUTODIFF_TAPE_HPP_
#define TRAJPRED_AUTODIFF_TAPE_HPP_

#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "trajpred/autodiff/tensor.hpp"
#include "trajpred/rng.hpp"

namespace trajpred::ad
{

/// Named weight tensor. Frozen parameters (trainable = false) receive zero
/// gradient and are never updated by the optimizer.
struct Parameter
{
  std::string name;
  Tensor value;
  bool trainable = true;
};

/// Glorot-style uniform init in +-sqrt(6 / (fan_in + fan_out)).
Tensor glorot_uniform(std::vector<int> shape, int fan_in, int fan_out, Rng & rng);

class Tape;

/// Gradients collected by Tape::backward, keyed by parameter identity.
class GradMap
{
public:
  /// Throws for parameters that never appeared on the tape.
  const Tensor & at(const Parameter & p) const;
  /// nullptr for parameters that never appeared on the tape.
  const Tensor * find(const Parameter & p) const;

private:
  friend class Tape;
  std::unordered_map<const Parameter *, Tensor> grads_;
};

/// Eager reverse-mode tape over dense tensors. Forward values are computed as
/// nodes are recorded; backward replays the recording once in reverse.
class Tape
{
public:
  using NodeId = int;

  /// Leaf with no gradient consumer (inputs, targets).
  NodeId constant(Tensor value);
  /// Leaf bound to a parameter; repeated calls for the same parameter return
  /// the same node so gradients accumulate.
  NodeId param(Parameter & p);

  NodeId matmul(NodeId a, NodeId b);  // [M,N]x[N]->[M] or [M,N]x[N,P]->[M,P]
  NodeId add(NodeId a, NodeId b);     // same shape, or per-channel bias [C] on [C,H,W]
  NodeId relu(NodeId a);
  NodeId sigmoid(NodeId a);
  NodeId tanh(NodeId a);
  NodeId mul(NodeId a, NodeId b);  // elementwise, same shape
  NodeId conv2d(NodeId input, NodeId kernel);  // [Cin,H,W] * [Cout,Cin,KH,KW], stride 1, valid
  NodeId maxpool2x2(NodeId a);
  NodeId flatten(NodeId a);
  NodeId concat(NodeId a, NodeId b);  // 1-D
  NodeId sum(NodeId a);
  NodeId softmax_cross_entropy(NodeId logits, int target_index);
  NodeId mse_loss(NodeId pred, NodeId target);

  const Tensor & value(NodeId id) const { return nodes_[id].value; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  /// Exact reverse-mode gradients of a scalar loss for every registered
  /// parameter. Throws std::invalid_argument when the loss is not scalar.
  GradMap backward(NodeId loss);

private:
  struct Node
  {
    Tensor value;
    // Accumulates into parent gradients; grads is indexed by node id and
    // lazily allocated.
    std::function<void(const Tensor & gout, std::vector<Tensor> & grads)> back;
  };

  NodeId push(Tensor value, std::function<void(const Tensor &, std::vector<Tensor> &)> back,
              const char * op);
  void check(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<std::pair<Parameter *, NodeId>> params_;
  std::unordered_map<const Parameter *, NodeId> param_nodes_;
};

/// p <- p - lr * g for trainable parameters; frozen ones are left untouched.
void sgd_step(std::span<Parameter * const> params, const GradMap & grads, double lr);

}  // namespace trajpred::ad

#endif  // TRAJPRED_AUTODIFF_TAPE_HPP_
