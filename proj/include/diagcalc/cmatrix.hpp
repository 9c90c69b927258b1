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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace diagcalc {

using cd = std::complex<double>;

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cd{0.0, 0.0}) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cd> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("CMatrix: entry count does not match shape");
  }
  CMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("CMatrix: ragged rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<cd>& data() const { return data_; }
  std::vector<cd>& data() { return data_; }

  cd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  CMatrix operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMatrix: product shape mismatch");
    CMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const cd a = (*this)(i, k);
        if (a == cd{}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  CMatrix operator*(cd s) const {
    CMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  CMatrix operator+(const CMatrix& o) const {
    if (!same_shape(o)) throw std::invalid_argument("CMatrix: sum shape mismatch");
    CMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  CMatrix operator-(const CMatrix& o) const { return *this + o * cd{-1.0, 0.0}; }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  CMatrix transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  CMatrix conjugate() const {
    CMatrix out = *this;
    for (auto& x : out.data_) x = std::conj(x);
    return out;
  }

  /// Kronecker product; the left factor owns the most significant index.
  CMatrix kron(const CMatrix& o) const {
    CMatrix out(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const cd a = (*this)(i, j);
        if (a == cd{}) continue;
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l)
            out(i * o.rows_ + k, j * o.cols_ + l) = a * o(k, l);
      }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  /// Largest elementwise distance; infinity when shapes differ.
  double max_abs_diff(const CMatrix& o) const {
    if (!same_shape(o)) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cd& x) {
      return std::isfinite(x.real()) && std::isfinite(x.imag());
    });
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> data_;
};

}  // namespace diagcalc
