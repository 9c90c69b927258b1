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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "diagcalc/cmatrix.hpp"

namespace diagcalc {

struct BoxFlags {
  bool isometry = false;
  bool unitary = false;
  bool normalized_state = false;

  bool operator==(const BoxFlags&) const = default;
};

/// Declaration of a named generic box. The matrix, when present, is the
/// plain variant with shape 2^out_arity x 2^in_arity.
struct BoxEntry {
  std::string name;
  int in_arity = 0;
  int out_arity = 0;
  BoxFlags flags;
  std::optional<CMatrix> matrix;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoxRegistry {
 public:
  /// Registers a box. Flags are closed under implication (unitary and
  /// normalized-state both imply isometry) and a supplied matrix is checked
  /// against them.
  void add(BoxEntry entry, double tol = 1e-9) {
    if (frozen_) throw RegistryError("box registry is frozen");
    if (entry.name.empty()) throw RegistryError("box name must not be empty");
    if (entry.in_arity < 0 || entry.out_arity < 0)
      throw RegistryError("box '" + entry.name + "': negative arity");
    if (entries_.count(entry.name)) throw RegistryError("box '" + entry.name + "' declared twice");
    auto& f = entry.flags;
    if (f.unitary) f.isometry = true;
    if (f.normalized_state) {
      if (entry.in_arity != 0)
        throw RegistryError("box '" + entry.name + "': normalized state must have no inputs");
      f.isometry = true;
    }
    if (f.unitary && entry.in_arity != entry.out_arity)
      throw RegistryError("box '" + entry.name + "': unitary must have equal arities");
    if (f.isometry && entry.in_arity > entry.out_arity)
      throw RegistryError("box '" + entry.name + "': isometry cannot shrink the system");
    if (entry.matrix) {
      const auto& m = *entry.matrix;
      if (m.rows() != (std::size_t{1} << entry.out_arity) ||
          m.cols() != (std::size_t{1} << entry.in_arity))
        throw RegistryError("box '" + entry.name + "': matrix shape does not match arity");
      if (f.isometry) {
        const auto gram = m.adjoint() * m;
        if (gram.max_abs_diff(CMatrix::identity(gram.rows())) > tol)
          throw RegistryError("box '" + entry.name + "': matrix is not an isometry");
      }
      if (f.unitary) {
        const auto gram = m * m.adjoint();
        if (gram.max_abs_diff(CMatrix::identity(gram.rows())) > tol)
          throw RegistryError("box '" + entry.name + "': matrix is not unitary");
      }
    }
    const std::string name = entry.name;
    entries_.emplace(name, std::move(entry));
  }

  const BoxEntry* find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  const std::map<std::string, BoxEntry>& entries() const { return entries_; }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  std::map<std::string, BoxEntry> entries_;
  bool frozen_ = false;
};

}  // namespace diagcalc
