// Copyright 2026 The EviGraph Authors.
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

#ifndef EVIGRAPH_AUTODIFF_H_
#define EVIGRAPH_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "evigraph/tensor.h"

namespace evigraph {

// A named trainable tensor. grad has the shape of value and accumulates
// across backward passes until zero_grad().
class Parameter {
 public:
  Parameter(std::string name, Tensor value);

  const std::string& name() const { return name_; }
  Tensor& value() { return value_; }
  const Tensor& value() const { return value_; }
  Tensor& grad() { return grad_; }
  const Tensor& grad() const { return grad_; }
  void zero_grad() { grad_.fill(0.0); }

  // Frozen parameters act as constants on a tape.
  bool trainable = true;

 private:
  std::string name_;
  Tensor value_;
  Tensor grad_;
};

// Owns parameters and iterates them in name order, which fixes the layout of
// checkpoints and optimizer state.
class ParameterStore {
 public:
  Parameter& add(const std::string& name, Tensor value);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  Parameter* find(const std::string& name);
  bool contains(const std::string& name) const { return params_.count(name) > 0; }

  std::vector<Parameter*> all();
  std::vector<const Parameter*> all() const;
  void zero_grad();
  std::size_t size() const { return params_.size(); }

 private:
  std::map<std::string, std::unique_ptr<Parameter>> params_;
};

class Tape;

// Handle to a node on a Tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Tensor& value() const;
  // Gradient after Tape::backward; zero-filled if the node was not reached.
  const Tensor& grad() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

// Reverse-mode tape. Nodes are appended in evaluation order; backward walks
// them in reverse and flushes leaf gradients into their Parameters.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  // Differentiable leaf not bound to a parameter.
  Var input(Tensor value);
  // Leaf that reads the parameter's value in place.
  Var param(Parameter& p);

  // Seeds d(loss)/d(loss) = 1. loss must hold exactly one value.
  void backward(Var loss);

  // Op-author interface.
  Var push(Tensor value, bool requires_grad, BackwardFn backward);
  const Tensor& value(std::size_t id) const;
  Tensor& grad(std::size_t id);
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    const Tensor* ref = nullptr;
    Tensor grad;
    bool requires_grad = false;
    BackwardFn backward;
    Parameter* param = nullptr;
  };
  std::vector<Node> nodes_;
};

// Differentiable operations. All operands are rank-2; a Var built from a
// rank-1 tensor of length n is treated as 1 x n.
namespace ops {

Var matmul(Var a, Var b);     // a[n x p] * b[p x q]
Var matmul_nt(Var a, Var b);  // a[n x p] * b[q x p]^T
// x W (+ b) with x[n x p], W[p x q], b of length q.
Var linear(Var x, Var w);
Var linear(Var x, Var w, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);        // Hadamard
Var scale(Var a, double c);
Var add_row(Var x, Var b);    // broadcast b[1 x q] over the rows of x
Var relu(Var x);
Var softmax_rows(Var x);
// Negative log-likelihood of class gold under softmax(logits); logits 1 x c.
Var cross_entropy(Var logits, std::size_t gold);
Var mean_rows(Var x);         // [n x d] -> [1 x d]; n >= 1
Var concat_cols(const std::vector<Var>& parts);
// Row r of the result is the mean of x's rows listed in groups[r]; an empty
// group yields a zero row.
Var group_mean(Var x, const std::vector<std::vector<std::size_t>>& groups);
// Rows of a parameter table gathered by index. Gradients are scattered
// directly into the parameter's row gradients.
Var embedding(Tape& tape, Parameter& table, const std::vector<std::size_t>& ids);
// scores[i][j] += bias[clamp(j - i, -window, window) + window];
// bias is 1 x (2 window + 1).
Var add_relative_bias(Var scores, Var bias, std::size_t window);
Var sum_all(Var x);           // -> 1 x 1

}  // namespace ops

// Forward-only helpers on plain tensors.
Tensor matmul(const Tensor& a, const Tensor& b);
// Softmax along axis 0 (columns) or 1 (rows) of a rank-1 or rank-2 tensor.
// Rank-1 tensors accept axis 0 only.
Tensor softmax(const Tensor& v, std::size_t axis);
Tensor relu(const Tensor& x);

}  // namespace evigraph

#endif  // EVIGRAPH_AUTODIFF_H_
