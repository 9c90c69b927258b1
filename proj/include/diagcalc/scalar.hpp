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

#include <cmath>
#include <compare>
#include <string>

namespace diagcalc {

/// Symbolic nonnegative real factor 2^pow2 * sqrt(2)^powsqrt2.
///
/// The tag multiplies the pure semantics of a diagram; the doubled (CPM)
/// semantics is multiplied by its square. It is kept normalized so that
/// powsqrt2 is 0 or 1, which makes structural equality meaningful.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int pow2, int powsqrt2) : half_exponent_(2 * pow2 + powsqrt2) {}

  static Scalar from_half_exponent(int e) {
    Scalar s;
    s.half_exponent_ = e;
    return s;
  }

  /// Exponent of sqrt(2).
  int half_exponent() const { return half_exponent_; }

  int pow2() const {
    // floor division
    return half_exponent_ >= 0 ? half_exponent_ / 2 : -((-half_exponent_ + 1) / 2);
  }
  int powsqrt2() const { return half_exponent_ - 2 * pow2(); }

  double value() const { return std::pow(2.0, 0.5 * half_exponent_); }
  double squared() const { return std::ldexp(1.0, half_exponent_); }
  bool is_one() const { return half_exponent_ == 0; }

  Scalar operator*(Scalar other) const {
    return from_half_exponent(half_exponent_ + other.half_exponent_);
  }
  Scalar& operator*=(Scalar other) {
    half_exponent_ += other.half_exponent_;
    return *this;
  }

  auto operator<=>(const Scalar&) const = default;

  std::string to_string() const {
    return "2^" + std::to_string(pow2()) + "*sqrt2^" + std::to_string(powsqrt2());
  }

 private:
  int half_exponent_ = 0;
};

}  // namespace diagcalc
