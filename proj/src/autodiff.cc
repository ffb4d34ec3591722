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

#include "evigraph/autodiff.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evigraph/errors.h"
#include "evigraph/kernels.h"

namespace evigraph {

Parameter::Parameter(std::string name, Tensor value)
    : name_(std::move(name)), value_(std::move(value)) {
  grad_ = Tensor(value_.shape(), 0.0);
}

Parameter& ParameterStore::add(const std::string& name, Tensor value) {
  auto [it, inserted] =
      params_.emplace(name, std::make_unique<Parameter>(name, std::move(value)));
  if (!inserted) throw Error("duplicate parameter name: " + name);
  return *it->second;
}

Parameter& ParameterStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return *it->second;
}

const Parameter& ParameterStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return *it->second;
}

Parameter* ParameterStore::find(const std::string& name) {
  auto it = params_.find(name);
  return it == params_.end() ? nullptr : it->second.get();
}

std::vector<Parameter*> ParameterStore::all() {
  std::vector<Parameter*> out;
  out.reserve(params_.size());
  for (auto& [name, p] : params_) out.push_back(p.get());
  return out;
}

std::vector<const Parameter*> ParameterStore::all() const {
  std::vector<const Parameter*> out;
  out.reserve(params_.size());
  for (const auto& [name, p] : params_) out.push_back(p.get());
  return out;
}

void ParameterStore::zero_grad() {
  for (auto& [name, p] : params_) p->zero_grad();
}

const Tensor& Var::value() const { return tape_->value(id_); }
const Tensor& Var::grad() const { return tape_->grad(id_); }

Var Tape::constant(Tensor value) { return push(std::move(value), false, nullptr); }

Var Tape::input(Tensor value) { return push(std::move(value), true, nullptr); }

Var Tape::param(Parameter& p) {
  Node node;
  node.ref = &p.value();
  node.requires_grad = p.trainable;
  node.param = &p;
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Tape::push(Tensor value, bool requires_grad, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

const Tensor& Tape::value(std::size_t id) const {
  const Node& n = nodes_[id];
  return n.ref ? *n.ref : n.value;
}

Tensor& Tape::grad(std::size_t id) {
  Node& n = nodes_[id];
  if (n.grad.size() != value(id).size()) n.grad = Tensor(value(id).shape(), 0.0);
  return n.grad;
}

void Tape::backward(Var loss) {
  if (loss.value().size() != 1) {
    throw DimensionError("backward needs a scalar loss, got " +
                         loss.value().shape_string());
  }
  if (!nodes_[loss.id()].requires_grad) return;
  grad(loss.id())[0] += 1.0;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.empty()) continue;
    if (n.backward) {
      n.backward(*this);
    } else if (n.param != nullptr) {
      kernels::axpy(1.0, nodes_[i].grad.data(), n.param->grad().data());
    }
  }
}

namespace ops {
namespace {

bool needs(const Var& v) { return v.tape().requires_grad(v.id()); }

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + a.shape_string() +
                         " vs " + b.shape_string());
  }
}

// Appends a node whose backward receives its own output gradient.
template <class F>
Var record(Tape& t, Tensor out, bool requires_grad, F fn) {
  const std::size_t self = t.size();
  if (!requires_grad) return t.push(std::move(out), false, nullptr);
  return t.push(std::move(out), true,
                [self, fn = std::move(fn)](Tape& tp) { fn(tp, tp.grad(self)); });
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = a.tape();
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const std::size_t n = av.rows(), p = av.cols(), q = bv.cols();
  if (bv.rows() != p) {
    throw DimensionError("matmul: " + av.shape_string() + " * " + bv.shape_string());
  }
  Tensor out = Tensor::matrix(n, q);
  kernels::gemm_nn(av.raw(), bv.raw(), out.raw(), n, p, q);
  return record(t, std::move(out), needs(a) || needs(b),
                [a, b, n, p, q](Tape& tp, const Tensor& dy) {
                  if (needs(a)) {
                    kernels::gemm_nt(dy.raw(), b.value().raw(), tp.grad(a.id()).raw(),
                                     n, q, p);
                  }
                  if (needs(b)) {
                    kernels::gemm_tn(a.value().raw(), dy.raw(), tp.grad(b.id()).raw(),
                                     n, p, q);
                  }
                });
}

Var matmul_nt(Var a, Var b) {
  Tape& t = a.tape();
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const std::size_t n = av.rows(), p = av.cols(), q = bv.rows();
  if (bv.cols() != p) {
    throw DimensionError("matmul_nt: " + av.shape_string() + " * " +
                         bv.shape_string() + "^T");
  }
  Tensor out = Tensor::matrix(n, q);
  kernels::gemm_nt(av.raw(), bv.raw(), out.raw(), n, p, q);
  return record(t, std::move(out), needs(a) || needs(b),
                [a, b, n, p, q](Tape& tp, const Tensor& dy) {
                  if (needs(a)) {
                    kernels::gemm_nn(dy.raw(), b.value().raw(), tp.grad(a.id()).raw(),
                                     n, q, p);
                  }
                  if (needs(b)) {
                    kernels::gemm_tn(dy.raw(), a.value().raw(), tp.grad(b.id()).raw(),
                                     n, q, p);
                  }
                });
}

Var linear(Var x, Var w) {
  if (x.cols() != w.rows()) {
    throw DimensionError("linear: x " + x.value().shape_string() + " vs W " +
                         w.value().shape_string());
  }
  return matmul(x, w);
}

Var linear(Var x, Var w, Var b) {
  if (b.value().size() != w.cols()) {
    throw DimensionError("linear: W " + w.value().shape_string() + " vs b " +
                         b.value().shape_string());
  }
  return add_row(linear(x, w), b);
}

Var add(Var a, Var b) {
  require_same_shape("add", a.value(), b.value());
  Tensor out = a.value();
  kernels::axpy(1.0, b.value().data(), out.data());
  return record(a.tape(), std::move(out), needs(a) || needs(b),
                [a, b](Tape& tp, const Tensor& dy) {
                  if (needs(a)) kernels::axpy(1.0, dy.data(), tp.grad(a.id()).data());
                  if (needs(b)) kernels::axpy(1.0, dy.data(), tp.grad(b.id()).data());
                });
}

Var sub(Var a, Var b) {
  require_same_shape("sub", a.value(), b.value());
  Tensor out = a.value();
  kernels::axpy(-1.0, b.value().data(), out.data());
  return record(a.tape(), std::move(out), needs(a) || needs(b),
                [a, b](Tape& tp, const Tensor& dy) {
                  if (needs(a)) kernels::axpy(1.0, dy.data(), tp.grad(a.id()).data());
                  if (needs(b)) kernels::axpy(-1.0, dy.data(), tp.grad(b.id()).data());
                });
}

Var mul(Var a, Var b) {
  require_same_shape("mul", a.value(), b.value());
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  return record(a.tape(), std::move(out), needs(a) || needs(b),
                [a, b](Tape& tp, const Tensor& dy) {
                  if (needs(a)) {
                    Tensor& da = tp.grad(a.id());
                    const Tensor& bv = b.value();
                    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * bv[i];
                  }
                  if (needs(b)) {
                    Tensor& db = tp.grad(b.id());
                    const Tensor& av = a.value();
                    for (std::size_t i = 0; i < dy.size(); ++i) db[i] += dy[i] * av[i];
                  }
                });
}

Var scale(Var a, double c) {
  Tensor out = a.value();
  kernels::active().scale(c, out.raw(), out.size());
  return record(a.tape(), std::move(out), needs(a), [a, c](Tape& tp, const Tensor& dy) {
    kernels::axpy(c, dy.data(), tp.grad(a.id()).data());
  });
}

Var add_row(Var x, Var b) {
  const std::size_t n = x.rows(), q = x.cols();
  if (b.value().size() != q) {
    throw DimensionError("add_row: " + x.value().shape_string() + " + " +
                         b.value().shape_string());
  }
  Tensor out = x.value();
  if (out.rank() != 2) out = Tensor({n, q}, std::vector<double>(out.data().begin(), out.data().end()));
  for (std::size_t r = 0; r < n; ++r) kernels::axpy(1.0, b.value().data(), out.row(r));
  return record(x.tape(), std::move(out), needs(x) || needs(b),
                [x, b, n, q](Tape& tp, const Tensor& dy) {
                  if (needs(x)) kernels::axpy(1.0, dy.data(), tp.grad(x.id()).data());
                  if (needs(b)) {
                    Tensor& db = tp.grad(b.id());
                    for (std::size_t r = 0; r < n; ++r) {
                      kernels::axpy(1.0, dy.data().subspan(r * q, q), db.data());
                    }
                  }
                });
}

Var relu(Var x) {
  Tensor out(x.value().shape());
  kernels::active().relu(x.value().raw(), out.raw(), out.size());
  return record(x.tape(), std::move(out), needs(x), [x](Tape& tp, const Tensor& dy) {
    Tensor& dx = tp.grad(x.id());
    const Tensor& xv = x.value();
    for (std::size_t i = 0; i < dy.size(); ++i) {
      if (xv[i] > 0.0) dx[i] += dy[i];
    }
  });
}

namespace {

void softmax_inplace(std::span<double> row) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : row) m = std::max(m, v);
  double z = 0.0;
  for (double& v : row) {
    v = std::exp(v - m);
    z += v;
  }
  for (double& v : row) v /= z;
}

}  // namespace

Var softmax_rows(Var x) {
  Tensor out = x.value();
  const std::size_t n = out.rows(), c = out.cols();
  for (std::size_t r = 0; r < n; ++r) softmax_inplace(out.row(r));
  const std::size_t self = x.tape().size();
  return record(x.tape(), std::move(out), needs(x),
                [x, self, n, c](Tape& tp, const Tensor& dy) {
                  const Tensor& y = tp.value(self);
                  Tensor& dx = tp.grad(x.id());
                  for (std::size_t r = 0; r < n; ++r) {
                    const double s = kernels::dot(dy.row(r), y.row(r));
                    for (std::size_t j = 0; j < c; ++j) {
                      dx.at(r, j) += y.at(r, j) * (dy.at(r, j) - s);
                    }
                  }
                });
}

Var cross_entropy(Var logits, std::size_t gold) {
  const Tensor& z = logits.value();
  if (z.rows() != 1) {
    throw DimensionError("cross_entropy expects 1 x c logits, got " + z.shape_string());
  }
  const std::size_t c = z.cols();
  if (gold >= c) {
    throw std::out_of_range("cross_entropy: gold class " + std::to_string(gold) +
                            " outside [0, " + std::to_string(c) + ")");
  }
  double m = -std::numeric_limits<double>::infinity();
  for (double v : z.data()) m = std::max(m, v);
  double sum = 0.0;
  for (double v : z.data()) sum += std::exp(v - m);
  const double lse = m + std::log(sum);
  Tensor out = Tensor::matrix(1, 1, lse - z[gold]);
  return record(logits.tape(), std::move(out), needs(logits),
                [logits, gold, c](Tape& tp, const Tensor& dy) {
                  Tensor p = logits.value();
                  softmax_inplace(p.data());
                  p[gold] -= 1.0;
                  kernels::axpy(dy[0], p.data(), tp.grad(logits.id()).data());
                  (void)c;
                });
}

Var mean_rows(Var x) {
  const std::size_t n = x.rows(), d = x.cols();
  if (n == 0) throw DimensionError("mean_rows: empty input");
  Tensor out = Tensor::matrix(1, d);
  for (std::size_t r = 0; r < n; ++r) kernels::axpy(1.0, x.value().row(r), out.data());
  kernels::active().scale(1.0 / static_cast<double>(n), out.raw(), d);
  return record(x.tape(), std::move(out), needs(x), [x, n, d](Tape& tp, const Tensor& dy) {
    Tensor& dx = tp.grad(x.id());
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) kernels::axpy(inv, dy.data(), dx.row(r));
    (void)d;
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw DimensionError("concat_cols: no inputs");
  const std::size_t n = parts.front().rows();
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  bool rg = false;
  for (const Var& v : parts) {
    if (v.rows() != n) throw DimensionError("concat_cols: row count mismatch");
    widths.push_back(v.cols());
    total += v.cols();
    rg = rg || needs(v);
  }
  Tensor out = Tensor::matrix(n, total);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      auto src = parts[k].value().row(r);
      std::copy(src.begin(), src.end(), out.row(r).begin() + off);
      off += widths[k];
    }
  }
  return record(parts.front().tape(), std::move(out), rg,
                [parts, widths, n, total](Tape& tp, const Tensor& dy) {
                  std::size_t off = 0;
                  for (std::size_t k = 0; k < parts.size(); ++k) {
                    if (needs(parts[k])) {
                      Tensor& dp = tp.grad(parts[k].id());
                      for (std::size_t r = 0; r < n; ++r) {
                        kernels::axpy(1.0, dy.data().subspan(r * total + off, widths[k]),
                                      dp.row(r));
                      }
                    }
                    off += widths[k];
                  }
                });
}

Var group_mean(Var x, const std::vector<std::vector<std::size_t>>& groups) {
  const std::size_t d = x.cols();
  Tensor out = Tensor::matrix(groups.size(), d);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) continue;
    for (std::size_t r : groups[g]) {
      if (r >= x.rows()) throw DimensionError("group_mean: row index out of range");
      kernels::axpy(1.0, x.value().row(r), out.row(g));
    }
    kernels::active().scale(1.0 / static_cast<double>(groups[g].size()),
                            out.row(g).data(), d);
  }
  return record(x.tape(), std::move(out), needs(x),
                [x, groups](Tape& tp, const Tensor& dy) {
                  Tensor& dx = tp.grad(x.id());
                  for (std::size_t g = 0; g < groups.size(); ++g) {
                    if (groups[g].empty()) continue;
                    const double inv = 1.0 / static_cast<double>(groups[g].size());
                    for (std::size_t r : groups[g]) {
                      kernels::axpy(inv, dy.row(g), dx.row(r));
                    }
                  }
                });
}

Var embedding(Tape& tape, Parameter& table, const std::vector<std::size_t>& ids) {
  const Tensor& tv = table.value();
  const std::size_t d = tv.cols();
  Tensor out = Tensor::matrix(ids.size(), d);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= tv.rows()) throw DimensionError("embedding: id out of range");
    auto src = tv.row(ids[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  Parameter* p = &table;
  return record(tape, std::move(out), table.trainable,
                [p, ids](Tape&, const Tensor& dy) {
                  for (std::size_t i = 0; i < ids.size(); ++i) {
                    kernels::axpy(1.0, dy.row(i), p->grad().row(ids[i]));
                  }
                });
}

Var add_relative_bias(Var scores, Var bias, std::size_t window) {
  const std::size_t n = scores.rows(), m = scores.cols();
  if (bias.value().size() != 2 * window + 1) {
    throw DimensionError("add_relative_bias: bias " + bias.value().shape_string() +
                         " does not match window " + std::to_string(window));
  }
  const auto w = static_cast<std::ptrdiff_t>(window);
  auto slot = [w](std::size_t i, std::size_t j) {
    std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
    return static_cast<std::size_t>(std::clamp(off, -w, w) + w);
  };
  Tensor out = scores.value();
  const Tensor& bv = bias.value();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.at(i, j) += bv[slot(i, j)];
  }
  return record(scores.tape(), std::move(out), needs(scores) || needs(bias),
                [scores, bias, n, m, slot](Tape& tp, const Tensor& dy) {
                  if (needs(scores)) {
                    kernels::axpy(1.0, dy.data(), tp.grad(scores.id()).data());
                  }
                  if (needs(bias)) {
                    Tensor& db = tp.grad(bias.id());
                    for (std::size_t i = 0; i < n; ++i) {
                      for (std::size_t j = 0; j < m; ++j) db[slot(i, j)] += dy.at(i, j);
                    }
                  }
                });
}

Var sum_all(Var x) {
  double s = 0.0;
  for (double v : x.value().data()) s += v;
  return record(x.tape(), Tensor::matrix(1, 1, s), needs(x),
                [x](Tape& tp, const Tensor& dy) {
                  Tensor& dx = tp.grad(x.id());
                  for (double& v : dx.data()) v += dy[0];
                });
}

}  // namespace ops

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + a.shape_string() + " * " + b.shape_string());
  }
  Tensor out = Tensor::matrix(a.rows(), b.cols());
  kernels::gemm_nn(a.raw(), b.raw(), out.raw(), a.rows(), a.cols(), b.cols());
  return out;
}

Tensor softmax(const Tensor& v, std::size_t axis) {
  Tensor out = v;
  if (v.rank() <= 1) {
    if (axis != 0) throw DimensionError("softmax: axis out of range for rank-1 input");
    ops::softmax_inplace(out.data());
    return out;
  }
  if (axis == 1) {
    for (std::size_t r = 0; r < out.rows(); ++r) ops::softmax_inplace(out.row(r));
    return out;
  }
  if (axis != 0) throw DimensionError("softmax: axis out of range");
  const std::size_t n = v.rows(), c = v.cols();
  std::vector<double> col(n);
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = v.at(i, j);
    ops::softmax_inplace(col);
    for (std::size_t i = 0; i < n; ++i) out.at(i, j) = col[i];
  }
  return out;
}

Tensor relu(const Tensor& x) {
  Tensor out(x.shape());
  kernels::active().relu(x.raw(), out.raw(), x.size());
  return out;
}

}  // namespace evigraph
