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

#include "trajpred/autodiff/tape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajpred::ad
{

namespace
{

[[noreturn]] void shape_error(const char * op, const Tensor & a, const Tensor & b)
{
  throw std::invalid_argument(
    std::string(op) + ": incompatible shapes " + a.shape_str() + " and " + b.shape_str());
}

void ensure_grad(std::vector<Tensor> & grads, int id, const std::vector<int> & shape)
{
  if (grads[id].data.empty()) {
    grads[id] = Tensor::zeros(shape);
  }
}

}  // namespace

Tensor glorot_uniform(std::vector<int> shape, int fan_in, int fan_out, Rng & rng)
{
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor t(std::move(shape));
  for (double & v : t.data) {
    v = rng.uniform(-limit, limit);
  }
  return t;
}

const Tensor & GradMap::at(const Parameter & p) const
{
  auto it = grads_.find(&p);
  if (it == grads_.end()) {
    throw std::invalid_argument("GradMap: parameter \"" + p.name + "\" not on tape");
  }
  return it->second;
}

const Tensor * GradMap::find(const Parameter & p) const
{
  auto it = grads_.find(&p);
  return it == grads_.end() ? nullptr : &it->second;
}

Tape::NodeId Tape::push(
  Tensor value, std::function<void(const Tensor &, std::vector<Tensor> &)> back, const char * op)
{
#ifndef NDEBUG
  if (!value.all_finite()) {
    throw std::runtime_error(std::string(op) + ": produced non-finite values");
  }
#else
  (void)op;
#endif
  nodes_.push_back(Node{std::move(value), std::move(back)});
  return static_cast<NodeId>(nodes_.size()) - 1;
}

void Tape::check(NodeId id) const
{
  if (id < 0 || id >= node_count()) {
    throw std::invalid_argument("Tape: node id out of range");
  }
}

Tape::NodeId Tape::constant(Tensor value) { return push(std::move(value), nullptr, "constant"); }

Tape::NodeId Tape::param(Parameter & p)
{
  auto it = param_nodes_.find(&p);
  if (it != param_nodes_.end()) {
    return it->second;
  }
  const NodeId id = push(p.value, nullptr, "param");
  param_nodes_.emplace(&p, id);
  params_.emplace_back(&p, id);
  return id;
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b)
{
  check(a);
  check(b);
  const Tensor & A = nodes_[a].value;
  const Tensor & B = nodes_[b].value;
  if (A.rank() != 2) {
    shape_error("matmul", A, B);
  }
  const int m = A.shape[0];
  const int n = A.shape[1];
  if (B.rank() == 1) {
    if (B.shape[0] != n) {
      shape_error("matmul", A, B);
    }
    Tensor y({m});
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      const double * row = &A.data[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) {
        acc += row[j] * B.data[j];
      }
      y.data[i] = acc;
    }
    return push(std::move(y), [this, a, b, m, n](const Tensor & g, std::vector<Tensor> & grads) {
      const Tensor & A_ = nodes_[a].value;
      const Tensor & x_ = nodes_[b].value;
      ensure_grad(grads, a, A_.shape);
      ensure_grad(grads, b, x_.shape);
      for (int i = 0; i < m; ++i) {
        const double gi = g.data[i];
        double * ga_row = &grads[a].data[static_cast<size_t>(i) * n];
        const double * a_row = &A_.data[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) {
          ga_row[j] += gi * x_.data[j];
          grads[b].data[j] += gi * a_row[j];
        }
      }
    }, "matmul");
  }
  if (B.rank() != 2 || B.shape[0] != n) {
    shape_error("matmul", A, B);
  }
  const int p = B.shape[1];
  Tensor y({m, p});
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = A.data[static_cast<size_t>(i) * n + k];
      for (int j = 0; j < p; ++j) {
        y.data[static_cast<size_t>(i) * p + j] += aik * B.data[static_cast<size_t>(k) * p + j];
      }
    }
  }
  return push(std::move(y), [this, a, b, m, n, p](const Tensor & g, std::vector<Tensor> & grads) {
    const Tensor & A_ = nodes_[a].value;
    const Tensor & B_ = nodes_[b].value;
    ensure_grad(grads, a, A_.shape);
    ensure_grad(grads, b, B_.shape);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < p; ++j) {
          const double gij = g.data[static_cast<size_t>(i) * p + j];
          acc += gij * B_.data[static_cast<size_t>(k) * p + j];
          grads[b].data[static_cast<size_t>(k) * p + j] +=
            A_.data[static_cast<size_t>(i) * n + k] * gij;
        }
        grads[a].data[static_cast<size_t>(i) * n + k] += acc;
      }
    }
  }, "matmul");
}

Tape::NodeId Tape::add(NodeId a, NodeId b)
{
  check(a);
  check(b);
  const Tensor & A = nodes_[a].value;
  const Tensor & B = nodes_[b].value;
  if (A.same_shape(B)) {
    Tensor y = A;
    for (int i = 0; i < y.size(); ++i) {
      y.data[i] += B.data[i];
    }
    return push(std::move(y), [this, a, b](const Tensor & g, std::vector<Tensor> & grads) {
      ensure_grad(grads, a, nodes_[a].value.shape);
      ensure_grad(grads, b, nodes_[b].value.shape);
      for (int i = 0; i < g.size(); ++i) {
        grads[a].data[i] += g.data[i];
        grads[b].data[i] += g.data[i];
      }
    }, "add");
  }
  // Per-channel bias: [C,H,W] + [C].
  if (A.rank() == 3 && B.rank() == 1 && B.shape[0] == A.shape[0]) {
    const int channels = A.shape[0];
    const int plane = A.shape[1] * A.shape[2];
    Tensor y = A;
    for (int c = 0; c < channels; ++c) {
      const double bias = B.data[c];
      for (int i = 0; i < plane; ++i) {
        y.data[static_cast<size_t>(c) * plane + i] += bias;
      }
    }
    return push(std::move(y), [this, a, b, channels, plane](const Tensor & g, std::vector<Tensor> & grads) {
      ensure_grad(grads, a, nodes_[a].value.shape);
      ensure_grad(grads, b, nodes_[b].value.shape);
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int i = 0; i < plane; ++i) {
          const double gv = g.data[static_cast<size_t>(c) * plane + i];
          grads[a].data[static_cast<size_t>(c) * plane + i] += gv;
          acc += gv;
        }
        grads[b].data[c] += acc;
      }
    }, "add");
  }
  shape_error("add", A, B);
}

Tape::NodeId Tape::relu(NodeId a)
{
  check(a);
  Tensor y = nodes_[a].value;
  for (double & v : y.data) {
    v = v > 0.0 ? v : 0.0;
  }
  return push(std::move(y), [this, a](const Tensor & g, std::vector<Tensor> & grads) {
    const Tensor & x = nodes_[a].value;
    ensure_grad(grads, a, x.shape);
    for (int i = 0; i < g.size(); ++i) {
      if (x.data[i] > 0.0) {
        grads[a].data[i] += g.data[i];
      }
    }
  }, "relu");
}

Tape::NodeId Tape::sigmoid(NodeId a)
{
  check(a);
  Tensor y = nodes_[a].value;
  for (double & v : y.data) {
    v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  const NodeId out = push(std::move(y), nullptr, "sigmoid");
  nodes_[out].back = [this, a, out](const Tensor & g, std::vector<Tensor> & grads) {
    const Tensor & s = nodes_[out].value;
    ensure_grad(grads, a, nodes_[a].value.shape);
    for (int i = 0; i < g.size(); ++i) {
      grads[a].data[i] += g.data[i] * s.data[i] * (1.0 - s.data[i]);
    }
  };
  return out;
}

Tape::NodeId Tape::tanh(NodeId a)
{
  check(a);
  Tensor y = nodes_[a].value;
  for (double & v : y.data) {
    v = std::tanh(v);
  }
  const NodeId out = push(std::move(y), nullptr, "tanh");
  nodes_[out].back = [this, a, out](const Tensor & g, std::vector<Tensor> & grads) {
    const Tensor & t = nodes_[out].value;
    ensure_grad(grads, a, nodes_[a].value.shape);
    for (int i = 0; i < g.size(); ++i) {
      grads[a].data[i] += g.data[i] * (1.0 - t.data[i] * t.data[i]);
    }
  };
  return out;
}

Tape::NodeId Tape::mul(NodeId a, NodeId b)
{
  check(a);
  check(b);
  const Tensor & A = nodes_[a].value;
  const Tensor & B = nodes_[b].value;
  if (!A.same_shape(B)) {
    shape_error("mul", A, B);
  }
  Tensor y = A;
  for (int i = 0; i < y.size(); ++i) {
    y.data[i] *= B.data[i];
  }
  return push(std::move(y), [this, a, b](const Tensor & g, std::vector<Tensor> & grads) {
    const Tensor & A_ = nodes_[a].value;
    const Tensor & B_ = nodes_[b].value;
    ensure_grad(grads, a, A_.shape);
    ensure_grad(grads, b, B_.shape);
    for (int i = 0; i < g.size(); ++i) {
      grads[a].data[i] += g.data[i] * B_.data[i];
      grads[b].data[i] += g.data[i] * A_.data[i];
    }
  }, "mul");
}

Tape::NodeId Tape::conv2d(NodeId input, NodeId kernel)
{
  check(input);
  check(kernel);
  const Tensor & in = nodes_[input].value;
  const Tensor & k = nodes_[kernel].value;
  if (in.rank() != 3 || k.rank() != 4 || k.shape[1] != in.shape[0] || k.shape[2] > in.shape[1] ||
      k.shape[3] > in.shape[2]) {
    shape_error("conv2d", in, k);
  }
  const int cin = in.shape[0];
  const int h = in.shape[1];
  const int w = in.shape[2];
  const int cout = k.shape[0];
  const int kh = k.shape[2];
  const int kw = k.shape[3];
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;

  Tensor y({cout, oh, ow});
  for (int o = 0; o < cout; ++o) {
    for (int c = 0; c < cin; ++c) {
      const double * kbase = &k.data[(static_cast<size_t>(o) * cin + c) * kh * kw];
      const double * ibase = &in.data[static_cast<size_t>(c) * h * w];
      double * obase = &y.data[static_cast<size_t>(o) * oh * ow];
      for (int p = 0; p < kh; ++p) {
        for (int q = 0; q < kw; ++q) {
          const double kv = kbase[p * kw + q];
          for (int i = 0; i < oh; ++i) {
            const double * irow = ibase + static_cast<size_t>(i + p) * w + q;
            double * orow = obase + static_cast<size_t>(i) * ow;
            for (int j = 0; j < ow; ++j) {
              orow[j] += kv * irow[j];
            }
          }
        }
      }
    }
  }
  return push(
    std::move(y),
    [this, input, kernel, cin, h, w, cout, kh, kw, oh, ow](
      const Tensor & g, std::vector<Tensor> & grads) {
      const Tensor & in_ = nodes_[input].value;
      const Tensor & k_ = nodes_[kernel].value;
      ensure_grad(grads, input, in_.shape);
      ensure_grad(grads, kernel, k_.shape);
      for (int o = 0; o < cout; ++o) {
        const double * gbase = &g.data[static_cast<size_t>(o) * oh * ow];
        for (int c = 0; c < cin; ++c) {
          const double * ibase = &in_.data[static_cast<size_t>(c) * h * w];
          const double * kbase = &k_.data[(static_cast<size_t>(o) * cin + c) * kh * kw];
          double * gibase = &grads[input].data[static_cast<size_t>(c) * h * w];
          double * gkbase = &grads[kernel].data[(static_cast<size_t>(o) * cin + c) * kh * kw];
          for (int p = 0; p < kh; ++p) {
            for (int q = 0; q < kw; ++q) {
              const double kv = kbase[p * kw + q];
              double acc = 0.0;
              for (int i = 0; i < oh; ++i) {
                const double * grow = gbase + static_cast<size_t>(i) * ow;
                const double * irow = ibase + static_cast<size_t>(i + p) * w + q;
                double * girow = gibase + static_cast<size_t>(i + p) * w + q;
                for (int j = 0; j < ow; ++j) {
                  acc += grow[j] * irow[j];
                  girow[j] += grow[j] * kv;
                }
              }
              gkbase[p * kw + q] += acc;
            }
          }
        }
      }
    },
    "conv2d");
}

Tape::NodeId Tape::maxpool2x2(NodeId a)
{
  check(a);
  const Tensor & in = nodes_[a].value;
  if (in.rank() != 3 || in.shape[1] % 2 != 0 || in.shape[2] % 2 != 0) {
    throw std::invalid_argument(
      "maxpool2x2: need [C,H,W] with even H and W, got " + in.shape_str());
  }
  const int c = in.shape[0];
  const int h = in.shape[1];
  const int w = in.shape[2];
  const int oh = h / 2;
  const int ow = w / 2;
  Tensor y({c, oh, ow});
  std::vector<int> argmax(static_cast<size_t>(c) * oh * ow);
  for (int ch = 0; ch < c; ++ch) {
    for (int i = 0; i < oh; ++i) {
      for (int j = 0; j < ow; ++j) {
        int best_idx = (ch * h + 2 * i) * w + 2 * j;
        double best = in.data[best_idx];
        const int candidates[3] = {
          (ch * h + 2 * i) * w + 2 * j + 1, (ch * h + 2 * i + 1) * w + 2 * j,
          (ch * h + 2 * i + 1) * w + 2 * j + 1};
        for (int idx : candidates) {
          if (in.data[idx] > best) {
            best = in.data[idx];
            best_idx = idx;
          }
        }
        y.data[(static_cast<size_t>(ch) * oh + i) * ow + j] = best;
        argmax[(static_cast<size_t>(ch) * oh + i) * ow + j] = best_idx;
      }
    }
  }
  return push(
    std::move(y),
    [this, a, argmax = std::move(argmax)](const Tensor & g, std::vector<Tensor> & grads) {
      ensure_grad(grads, a, nodes_[a].value.shape);
      for (int i = 0; i < g.size(); ++i) {
        grads[a].data[argmax[i]] += g.data[i];
      }
    },
    "maxpool2x2");
}

Tape::NodeId Tape::flatten(NodeId a)
{
  check(a);
  const Tensor & in = nodes_[a].value;
  Tensor y({in.size()}, in.data);
  return push(std::move(y), [this, a](const Tensor & g, std::vector<Tensor> & grads) {
    ensure_grad(grads, a, nodes_[a].value.shape);
    for (int i = 0; i < g.size(); ++i) {
      grads[a].data[i] += g.data[i];
    }
  }, "flatten");
}

Tape::NodeId Tape::concat(NodeId a, NodeId b)
{
  check(a);
  check(b);
  const Tensor & A = nodes_[a].value;
  const Tensor & B = nodes_[b].value;
  if (A.rank() != 1 || B.rank() != 1) {
    shape_error("concat", A, B);
  }
  Tensor y({A.size() + B.size()});
  std::copy(A.data.begin(), A.data.end(), y.data.begin());
  std::copy(B.data.begin(), B.data.end(), y.data.begin() + A.size());
  const int na = A.size();
  return push(std::move(y), [this, a, b, na](const Tensor & g, std::vector<Tensor> & grads) {
    ensure_grad(grads, a, nodes_[a].value.shape);
    ensure_grad(grads, b, nodes_[b].value.shape);
    for (int i = 0; i < na; ++i) {
      grads[a].data[i] += g.data[i];
    }
    for (int i = na; i < g.size(); ++i) {
      grads[b].data[i - na] += g.data[i];
    }
  }, "concat");
}

Tape::NodeId Tape::sum(NodeId a)
{
  check(a);
  double total = 0.0;
  for (double v : nodes_[a].value.data) {
    total += v;
  }
  return push(Tensor::scalar(total), [this, a](const Tensor & g, std::vector<Tensor> & grads) {
    ensure_grad(grads, a, nodes_[a].value.shape);
    for (double & v : grads[a].data) {
      v += g.data[0];
    }
  }, "sum");
}

Tape::NodeId Tape::softmax_cross_entropy(NodeId logits, int target_index)
{
  check(logits);
  const Tensor & x = nodes_[logits].value;
  if (x.rank() != 1) {
    throw std::invalid_argument("softmax_cross_entropy: logits must be 1-D, got " + x.shape_str());
  }
  if (target_index < 0 || target_index >= x.size()) {
    throw std::invalid_argument(
      "softmax_cross_entropy: target " + std::to_string(target_index) + " outside [0, " +
      std::to_string(x.size()) + ")");
  }
  const double m = *std::max_element(x.data.begin(), x.data.end());
  double z = 0.0;
  for (double v : x.data) {
    z += std::exp(v - m);
  }
  const double loss = m + std::log(z) - x.data[target_index];
  std::vector<double> softmax(x.data.size());
  for (size_t i = 0; i < softmax.size(); ++i) {
    softmax[i] = std::exp(x.data[i] - m) / z;
  }
  return push(
    Tensor::scalar(loss),
    [this, logits, target_index, softmax = std::move(softmax)](
      const Tensor & g, std::vector<Tensor> & grads) {
      ensure_grad(grads, logits, nodes_[logits].value.shape);
      for (size_t i = 0; i < softmax.size(); ++i) {
        const double onehot = static_cast<int>(i) == target_index ? 1.0 : 0.0;
        grads[logits].data[i] += g.data[0] * (softmax[i] - onehot);
      }
    },
    "softmax_cross_entropy");
}

Tape::NodeId Tape::mse_loss(NodeId pred, NodeId target)
{
  check(pred);
  check(target);
  const Tensor & p = nodes_[pred].value;
  const Tensor & t = nodes_[target].value;
  if (!p.same_shape(t)) {
    shape_error("mse_loss", p, t);
  }
  double total = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double d = p.data[i] - t.data[i];
    total += d * d;
  }
  const int n = p.size();
  return push(
    Tensor::scalar(total / n),
    [this, pred, target, n](const Tensor & g, std::vector<Tensor> & grads) {
      const Tensor & p_ = nodes_[pred].value;
      const Tensor & t_ = nodes_[target].value;
      ensure_grad(grads, pred, p_.shape);
      ensure_grad(grads, target, t_.shape);
      for (int i = 0; i < n; ++i) {
        const double d = 2.0 * (p_.data[i] - t_.data[i]) / n;
        grads[pred].data[i] += g.data[0] * d;
        grads[target].data[i] -= g.data[0] * d;
      }
    },
    "mse_loss");
}

GradMap Tape::backward(NodeId loss)
{
  check(loss);
  if (nodes_[loss].value.size() != 1) {
    throw std::invalid_argument(
      "backward: loss must be scalar, got shape " + nodes_[loss].value.shape_str());
  }
  std::vector<Tensor> grads(nodes_.size());
  grads[loss] = Tensor({1}, {1.0});
  for (NodeId id = loss; id >= 0; --id) {
    if (grads[id].data.empty() || !nodes_[id].back) {
      continue;
    }
    nodes_[id].back(grads[id], grads);
  }
  GradMap out;
  for (const auto & [p, id] : params_) {
    if (p->trainable && !grads[id].data.empty()) {
      out.grads_.emplace(p, std::move(grads[id]));
    } else {
      out.grads_.emplace(p, Tensor::zeros(p->value.shape));
    }
  }
  return out;
}

void sgd_step(std::span<Parameter * const> params, const GradMap & grads, double lr)
{
  if (!(lr > 0.0)) {
    throw std::invalid_argument("sgd_step: learning rate must be > 0");
  }
  for (Parameter * p : params) {
    if (!p->trainable) {
      continue;
    }
    const Tensor * g = grads.find(*p);
    if (g == nullptr) {
      continue;  // parameter not touched by this tape
    }
    for (int i = 0; i < p->value.size(); ++i) {
      p->value.data[i] -= lr * g->data[i];
    }
  }
}

}  // namespace trajpred::ad
