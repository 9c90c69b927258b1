// Copyright 2026 The diagcalc Authors
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

#pragma once

// Qubit matrix semantics of diagrams.
//
// Conventions, fixed for the whole library:
//  * A matrix of a diagram n -> m has 2^m rows and 2^n columns (4^m x 4^n
//    doubled). Boundary position 0 is the most significant digit.
//  * Doubling pairs the two copies per wire as digit x = 2a + b, where a
//    indexes the conjugate copy and b the plain copy, so a pure map M becomes
//    conj(M) (x) M with the copies interleaved wire by wire.
//  * With that pairing, vec(rho)[2a + b] = rho[b][a] (column stacking) and
//    the environment effect is the row (1, 0, 0, 1).
//  * The scalar tag s multiplies pure values; doubled values get s^2.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcalc/box_registry.hpp"
#include "diagcalc/cmatrix.hpp"
#include "diagcalc/diagram.hpp"

namespace diagcalc {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EvalMode { pure, doubled };

namespace detail {

/// Dense tensor whose indices are named by wire ids; all indices share the
/// same dimension. labels[0] is the most significant digit.
struct LabeledTensor {
  std::vector<int> labels;
  std::vector<cd> data{cd{1.0, 0.0}};
};

inline std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

/// Contracts two tensors, summing over every label that is not in `keep`.
inline LabeledTensor contract(const LabeledTensor& A, const LabeledTensor& B,
                              const std::set<int>& keep, std::size_t dim) {
  std::vector<int> b_only;
  for (int l : B.labels)
    if (std::find(A.labels.begin(), A.labels.end(), l) == A.labels.end()) b_only.push_back(l);

  LabeledTensor R;
  for (int l : A.labels)
    if (keep.count(l)) R.labels.push_back(l);
  for (int l : b_only)
    if (keep.count(l)) R.labels.push_back(l);
  R.data.assign(ipow(dim, R.labels.size()), cd{});

  auto stride_in = [dim](const std::vector<int>& labels, int l) -> std::size_t {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) return 0;
    return ipow(dim, labels.size() - 1 - static_cast<std::size_t>(it - labels.begin()));
  };
  // Strides of A's labels inside B and R, and of b_only labels inside B and R.
  std::vector<std::size_t> a_in_b, a_in_r, bo_in_b, bo_in_r;
  for (int l : A.labels) {
    a_in_b.push_back(stride_in(B.labels, l));
    a_in_r.push_back(stride_in(R.labels, l));
  }
  for (int l : b_only) {
    bo_in_b.push_back(stride_in(B.labels, l));
    bo_in_r.push_back(stride_in(R.labels, l));
  }
  const std::size_t bo_count = ipow(dim, b_only.size());
  std::vector<std::size_t> bo_b(bo_count), bo_r(bo_count);
  for (std::size_t k = 0; k < bo_count; ++k) {
    std::size_t rem = k, ib = 0, ir = 0;
    for (std::size_t j = b_only.size(); j-- > 0;) {
      const std::size_t digit = rem % dim;
      rem /= dim;
      ib += digit * bo_in_b[j];
      ir += digit * bo_in_r[j];
    }
    bo_b[k] = ib;
    bo_r[k] = ir;
  }

  const std::size_t na = A.labels.size();
  for (std::size_t ia = 0; ia < A.data.size(); ++ia) {
    const cd a = A.data[ia];
    if (a == cd{}) continue;
    std::size_t rem = ia, base_b = 0, base_r = 0;
    for (std::size_t j = na; j-- > 0;) {
      const std::size_t digit = rem % dim;
      rem /= dim;
      base_b += digit * a_in_b[j];
      base_r += digit * a_in_r[j];
    }
    for (std::size_t k = 0; k < bo_count; ++k) {
      const cd b = B.data[base_b + bo_b[k]];
      if (b == cd{}) continue;
      R.data[base_r + bo_r[k]] += a * b;
    }
  }
  return R;
}

inline const CMatrix& box_matrix(const Vertex& v, const BoxRegistry* registry, CMatrix& storage) {
  const BoxEntry* e = registry ? registry->find(v.box_name) : nullptr;
  if (!e || !e->matrix) throw EvalError("box '" + v.box_name + "' has no registered matrix");
  switch (v.variant) {
    case BoxVariant::plain: return *e->matrix;
    case BoxVariant::dagger: storage = e->matrix->adjoint(); break;
    case BoxVariant::conjugate: storage = e->matrix->conjugate(); break;
    case BoxVariant::dagger_conjugate: storage = e->matrix->transpose(); break;
  }
  return storage;
}

/// Pure value of one generator given the bit on each of its ports, where
/// `bits` is indexed by leg position (legs sorted by port).
class PureGenerator {
 public:
  PureGenerator(const Vertex& v, const std::vector<Leg>& legs, const BoxRegistry* registry)
      : v_(v), legs_(legs) {
    if (v.is_box()) matrix_ = &box_matrix(v, registry, storage_);
    if (v.is_environment()) throw EvalError("environment has no pure semantics");
  }

  cd operator()(const std::vector<int>& bits) const {
    switch (v_.kind) {
      case VertexKind::spider: {
        if (bits.empty()) return 2.0;
        for (int b : bits)
          if (b != bits[0]) return 0.0;
        return 1.0;
      }
      case VertexKind::hadamard:
        return (bits[0] & bits[1]) ? -M_SQRT1_2 : M_SQRT1_2;
      case VertexKind::point:
        return bits[0] == v_.point_index ? 1.0 : 0.0;
      case VertexKind::box: {
        std::size_t row = 0, col = 0;
        std::vector<int> by_port(static_cast<std::size_t>(v_.box_inputs + v_.box_outputs), 0);
        for (std::size_t k = 0; k < legs_.size(); ++k)
          by_port[static_cast<std::size_t>(legs_[k].port)] = bits[k];
        for (int p = 0; p < v_.box_inputs; ++p) col = 2 * col + static_cast<std::size_t>(by_port[static_cast<std::size_t>(p)]);
        for (int p = 0; p < v_.box_outputs; ++p)
          row = 2 * row + static_cast<std::size_t>(by_port[static_cast<std::size_t>(v_.box_inputs + p)]);
        return (*matrix_)(row, col);
      }
      case VertexKind::environment: break;
    }
    return 0.0;
  }

 private:
  const Vertex& v_;
  const std::vector<Leg>& legs_;
  const CMatrix* matrix_ = nullptr;
  CMatrix storage_;
};

/// The tensor of one vertex over the distinct wire labels of its legs.
inline LabeledTensor vertex_tensor(const Diagram& d, VertexId id, EvalMode mode,
                                   const BoxRegistry* registry) {
  const Vertex& v = d.vertex(id);
  const auto legs = d.legs(id);
  LabeledTensor t;
  for (const auto& l : legs)
    if (std::find(t.labels.begin(), t.labels.end(), l.wire) == t.labels.end())
      t.labels.push_back(l.wire);
  std::vector<std::size_t> slot(legs.size());
  for (std::size_t k = 0; k < legs.size(); ++k)
    slot[k] = static_cast<std::size_t>(
        std::find(t.labels.begin(), t.labels.end(), legs[k].wire) - t.labels.begin());

  const std::size_t dim = mode == EvalMode::pure ? 2 : 4;
  const std::size_t n = t.labels.size();
  t.data.assign(ipow(dim, n), cd{});
  std::vector<std::size_t> digits(n);

  if (v.is_environment()) {
    if (mode == EvalMode::pure) throw EvalError("environment has no pure semantics");
    t.data[0] = 1.0;
    t.data[3] = 1.0;
    return t;
  }

  PureGenerator g(v, legs, registry);
  std::vector<int> a(legs.size()), b(legs.size());
  for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = n; j-- > 0;) {
      digits[j] = rem % dim;
      rem /= dim;
    }
    if (mode == EvalMode::pure) {
      for (std::size_t k = 0; k < legs.size(); ++k) a[k] = static_cast<int>(digits[slot[k]]);
      t.data[idx] = g(a);
    } else {
      for (std::size_t k = 0; k < legs.size(); ++k) {
        a[k] = static_cast<int>(digits[slot[k]] / 2);
        b[k] = static_cast<int>(digits[slot[k]] % 2);
      }
      const cd va = g(a);
      if (va == cd{}) continue;
      t.data[idx] = std::conj(va) * g(b);
    }
  }
  return t;
}

inline CMatrix evaluate(const Diagram& d, EvalMode mode, const BoxRegistry* registry) {
  const std::size_t dim = mode == EvalMode::pure ? 2 : 4;

  std::vector<int> in_label(static_cast<std::size_t>(d.inputs())),
      out_label(static_cast<std::size_t>(d.outputs()));
  std::set<int> boundary;
  for (int i = 0; i < d.inputs(); ++i) {
    auto w = d.wire_at(Endpoint::in(i));
    if (!w) throw EvalError("input " + std::to_string(i) + " is not wired");
    in_label[static_cast<std::size_t>(i)] = *w;
    boundary.insert(*w);
  }
  for (int i = 0; i < d.outputs(); ++i) {
    auto w = d.wire_at(Endpoint::out(i));
    if (!w) throw EvalError("output " + std::to_string(i) + " is not wired");
    out_label[static_cast<std::size_t>(i)] = *w;
    boundary.insert(*w);
  }

  std::map<VertexId, LabeledTensor> pending;
  for (const auto& [id, v] : d.vertices()) pending.emplace(id, vertex_tensor(d, id, mode, registry));

  // Greedy order: most labels shared with the running tensor, then lowest id.
  LabeledTensor cur;
  while (!pending.empty()) {
    auto best = pending.begin();
    std::size_t best_shared = 0;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      std::size_t shared = 0;
      for (int l : it->second.labels)
        if (std::find(cur.labels.begin(), cur.labels.end(), l) != cur.labels.end()) ++shared;
      if (shared > best_shared) {
        best = it;
        best_shared = shared;
      }
    }
    LabeledTensor next = std::move(best->second);
    pending.erase(best);
    std::set<int> keep = boundary;
    for (const auto& [id, t] : pending) keep.insert(t.labels.begin(), t.labels.end());
    cur = contract(cur, next, keep, dim);
  }

  const std::size_t rows = ipow(dim, static_cast<std::size_t>(d.outputs()));
  const std::size_t cols = ipow(dim, static_cast<std::size_t>(d.inputs()));
  CMatrix m(rows, cols);
  const double s = mode == EvalMode::pure ? d.scalar().value() : d.scalar().squared();

  std::map<int, std::size_t> value;
  std::vector<std::size_t> cur_stride(cur.labels.size());
  for (std::size_t j = 0; j < cur.labels.size(); ++j)
    cur_stride[j] = ipow(dim, cur.labels.size() - 1 - j);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      value.clear();
      bool consistent = true;
      auto assign = [&](int label, std::size_t digit) {
        auto [it, fresh] = value.try_emplace(label, digit);
        if (!fresh && it->second != digit) consistent = false;
      };
      std::size_t rem = r;
      for (int i = d.outputs(); i-- > 0;) {
        assign(out_label[static_cast<std::size_t>(i)], rem % dim);
        rem /= dim;
      }
      rem = c;
      for (int i = d.inputs(); i-- > 0;) {
        assign(in_label[static_cast<std::size_t>(i)], rem % dim);
        rem /= dim;
      }
      if (!consistent) continue;
      std::size_t idx = 0;
      for (std::size_t j = 0; j < cur.labels.size(); ++j) idx += value.at(cur.labels[j]) * cur_stride[j];
      m(r, c) = cur.data[idx] * s;
    }
  return m;
}

}  // namespace detail

/// Linear map of an environment-free diagram, 2^outputs x 2^inputs.
inline CMatrix eval_pure(const Diagram& d, const BoxRegistry* registry = nullptr) {
  for (const auto& [id, v] : d.vertices())
    if (v.is_environment()) throw EvalError("pure evaluation of a diagram with an environment");
  return detail::evaluate(d, EvalMode::pure, registry);
}

/// Completely positive map of a diagram, 4^outputs x 4^inputs, acting on
/// vectorized density matrices.
inline CMatrix eval_cpm(const Diagram& d, const BoxRegistry* registry = nullptr) {
  return detail::evaluate(d, EvalMode::doubled, registry);
}

inline CMatrix eval(const Diagram& d, EvalMode mode, const BoxRegistry* registry = nullptr) {
  return mode == EvalMode::pure ? eval_pure(d, registry) : eval_cpm(d, registry);
}

namespace detail {
inline int log2_exact(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw EvalError("dimension is not a power of two");
  int k = 0;
  while ((std::size_t{1} << k) != n) ++k;
  return k;
}
}  // namespace detail

/// conj(M) (x) M with the two copies interleaved per wire.
inline CMatrix cpm_double(const CMatrix& M) {
  const int m = detail::log2_exact(M.rows());
  const int n = detail::log2_exact(M.cols());
  CMatrix out(detail::ipow(4, static_cast<std::size_t>(m)), detail::ipow(4, static_cast<std::size_t>(n)));
  // Split a base-4 index into its conjugate bits and plain bits.
  auto split = [](std::size_t x, int wires, std::size_t& a, std::size_t& b) {
    a = 0;
    b = 0;
    for (int k = wires - 1; k >= 0; --k) {
      const std::size_t digit = (x >> (2 * k)) & 3u;
      a = 2 * a + (digit >> 1);
      b = 2 * b + (digit & 1u);
    }
  };
  for (std::size_t r = 0; r < out.rows(); ++r) {
    std::size_t ra, rb;
    split(r, m, ra, rb);
    for (std::size_t c = 0; c < out.cols(); ++c) {
      std::size_t ca, cb;
      split(c, n, ca, cb);
      const cd x = M(ra, ca);
      if (x == cd{}) continue;
      out(r, c) = std::conj(x) * M(rb, cb);
    }
  }
  return out;
}

/// Column-stacked vectorization matching the doubling convention, for a
/// density matrix on any number of qubits.
inline CMatrix vectorize(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) throw EvalError("vectorize: matrix is not square");
  const int n = detail::log2_exact(rho.rows());
  CMatrix v(detail::ipow(4, static_cast<std::size_t>(n)), 1);
  for (std::size_t x = 0; x < v.rows(); ++x) {
    std::size_t a = 0, b = 0;
    for (int k = n - 1; k >= 0; --k) {
      const std::size_t digit = (x >> (2 * k)) & 3u;
      a = 2 * a + (digit >> 1);
      b = 2 * b + (digit & 1u);
    }
    v(x, 0) = rho(b, a);
  }
  return v;
}

inline CMatrix unvectorize(const CMatrix& v) {
  if (v.cols() != 1) throw EvalError("unvectorize: not a column");
  const int n4 = detail::log2_exact(v.rows());
  if (n4 % 2) throw EvalError("unvectorize: length is not a power of four");
  const int n = n4 / 2;
  const std::size_t dim = std::size_t{1} << n;
  CMatrix rho(dim, dim);
  for (std::size_t x = 0; x < v.rows(); ++x) {
    std::size_t a = 0, b = 0;
    for (int k = n - 1; k >= 0; --k) {
      const std::size_t digit = (x >> (2 * k)) & 3u;
      a = 2 * a + (digit >> 1);
      b = 2 * b + (digit & 1u);
    }
    rho(b, a) = v(x, 0);
  }
  return rho;
}

/// Positive c with A = c * B, if any. Both matrices are scaled to unit
/// max-entry before the elementwise comparison at `tol`. Two zero matrices
/// compare equal with c = 1.
inline std::optional<double> eq_up_to_scalar(const CMatrix& A, const CMatrix& B, double tol = 1e-9) {
  if (!A.same_shape(B)) throw EvalError("eq_up_to_scalar: shape mismatch");
  constexpr double zero = 1e-12;
  const double ma = A.max_abs(), mb = B.max_abs();
  if (ma < zero && mb < zero) return 1.0;
  if (ma < zero || mb < zero) return std::nullopt;
  const double diff = (A * cd{1.0 / ma, 0.0}).max_abs_diff(B * cd{1.0 / mb, 0.0});
  if (diff > tol) return std::nullopt;
  return ma / mb;
}

/// Traces out wire k of a vectorized n-wire state (4^n x 1).
inline CMatrix partial_trace(const CMatrix& state, int k) {
  if (state.cols() != 1) throw EvalError("partial_trace: expected a vectorized state");
  const int n4 = detail::log2_exact(state.rows());
  if (n4 % 2) throw EvalError("partial_trace: length is not a power of four");
  const int n = n4 / 2;
  if (k < 0 || k >= n) throw EvalError("partial_trace: wire index out of range");
  CMatrix out(detail::ipow(4, static_cast<std::size_t>(n - 1)), 1);
  const std::size_t low = detail::ipow(4, static_cast<std::size_t>(n - 1 - k));
  for (std::size_t x = 0; x < state.rows(); ++x) {
    const std::size_t digit = (x / low) % 4;
    if (digit != 0 && digit != 3) continue;
    const std::size_t high = x / (low * 4);
    const std::size_t rest = high * low + x % low;
    out(rest, 0) += state(x, 0);
  }
  return out;
}

}  // namespace diagcalc
