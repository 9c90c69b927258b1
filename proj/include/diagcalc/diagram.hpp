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
#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diagcalc/box_registry.hpp"
#include "diagcalc/scalar.hpp"

namespace diagcalc {

using VertexId = int;
using WireId = int;

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VertexKind : std::uint8_t { spider, hadamard, environment, point, box };

enum class BoxVariant : std::uint8_t { plain, dagger, conjugate, dagger_conjugate };

inline bool has_dagger(BoxVariant v) {
  return v == BoxVariant::dagger || v == BoxVariant::dagger_conjugate;
}
inline bool has_conjugate(BoxVariant v) {
  return v == BoxVariant::conjugate || v == BoxVariant::dagger_conjugate;
}
inline BoxVariant toggle_dagger(BoxVariant v) {
  switch (v) {
    case BoxVariant::plain: return BoxVariant::dagger;
    case BoxVariant::dagger: return BoxVariant::plain;
    case BoxVariant::conjugate: return BoxVariant::dagger_conjugate;
    case BoxVariant::dagger_conjugate: return BoxVariant::conjugate;
  }
  return v;
}

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::spider: return "spider";
    case VertexKind::hadamard: return "hadamard";
    case VertexKind::environment: return "environment";
    case VertexKind::point: return "point";
    case VertexKind::box: return "box";
  }
  return "?";
}

inline const char* to_string(BoxVariant v) {
  switch (v) {
    case BoxVariant::plain: return "plain";
    case BoxVariant::dagger: return "dagger";
    case BoxVariant::conjugate: return "conjugate";
    case BoxVariant::dagger_conjugate: return "dagger-conjugate";
  }
  return "?";
}

/// A generator occurrence. Spiders, Hadamards, environments and points have
/// unordered legs; a box numbers its inputs 0..in-1 and its outputs
/// in..in+out-1, with arities already swapped for dagger variants.
struct Vertex {
  VertexKind kind = VertexKind::spider;
  int point_index = 0;
  std::string box_name;
  BoxVariant variant = BoxVariant::plain;
  int box_inputs = 0;
  int box_outputs = 0;

  static Vertex spider() { return {}; }
  static Vertex hadamard() {
    Vertex v;
    v.kind = VertexKind::hadamard;
    return v;
  }
  static Vertex environment() {
    Vertex v;
    v.kind = VertexKind::environment;
    return v;
  }
  static Vertex point(int index) {
    Vertex v;
    v.kind = VertexKind::point;
    v.point_index = index;
    return v;
  }
  static Vertex box(std::string name, int inputs, int outputs,
                    BoxVariant variant = BoxVariant::plain) {
    Vertex v;
    v.kind = VertexKind::box;
    v.box_name = std::move(name);
    v.box_inputs = inputs;
    v.box_outputs = outputs;
    v.variant = variant;
    return v;
  }

  bool is_spider() const { return kind == VertexKind::spider; }
  bool is_hadamard() const { return kind == VertexKind::hadamard; }
  bool is_environment() const { return kind == VertexKind::environment; }
  bool is_point() const { return kind == VertexKind::point; }
  bool is_box() const { return kind == VertexKind::box; }

  /// Number of wire-ends the generator requires, or -1 for spiders.
  int required_degree() const {
    switch (kind) {
      case VertexKind::spider: return -1;
      case VertexKind::hadamard: return 2;
      case VertexKind::environment:
      case VertexKind::point: return 1;
      case VertexKind::box: return box_inputs + box_outputs;
    }
    return -1;
  }

  bool operator==(const Vertex&) const = default;
};

/// One end of a wire: a vertex port or a boundary position.
struct Endpoint {
  enum class Side : std::uint8_t { vertex, input, output };

  Side side = Side::vertex;
  int id = 0;    // vertex id, or boundary position
  int port = 0;  // vertex port; always 0 on the boundary

  static Endpoint at(VertexId v, int port) { return {Side::vertex, v, port}; }
  static Endpoint in(int position) { return {Side::input, position, 0}; }
  static Endpoint out(int position) { return {Side::output, position, 0}; }

  bool on_vertex() const { return side == Side::vertex; }
  bool on_boundary() const { return side != Side::vertex; }

  auto operator<=>(const Endpoint&) const = default;
};

struct Wire {
  Endpoint a;
  Endpoint b;
  /// Display-only marker for wires drawn as classical channels.
  bool classical = false;

  bool touches(VertexId v) const {
    return (a.on_vertex() && a.id == v) || (b.on_vertex() && b.id == v);
  }
  bool is_self_loop() const { return a.on_vertex() && b.on_vertex() && a.id == b.id; }
};

/// A wire-end seen from a vertex.
struct Leg {
  int port;
  WireId wire;
  Endpoint far;
};

/// An open graph of generators with ordered boundary ports.
class Diagram {
 public:
  Diagram() = default;
  Diagram(int inputs, int outputs) : inputs_(inputs), outputs_(outputs) {
    if (inputs < 0 || outputs < 0) throw DiagramError("negative boundary arity");
  }

  int inputs() const { return inputs_; }
  int outputs() const { return outputs_; }
  const Scalar& scalar() const { return scalar_; }
  void set_scalar(Scalar s) { scalar_ = s; }
  void multiply_scalar(Scalar s) { scalar_ *= s; }

  const std::map<VertexId, Vertex>& vertices() const { return vertices_; }
  const std::map<WireId, Wire>& wires() const { return wires_; }
  VertexId next_vertex_id() const { return next_vertex_; }
  WireId next_wire_id() const { return next_wire_; }

  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
  bool has_wire(WireId w) const { return wires_.count(w) != 0; }

  const Vertex& vertex(VertexId v) const {
    auto it = vertices_.find(v);
    if (it == vertices_.end()) throw DiagramError("no vertex " + std::to_string(v));
    return it->second;
  }
  const Wire& wire(WireId w) const {
    auto it = wires_.find(w);
    if (it == wires_.end()) throw DiagramError("no wire " + std::to_string(w));
    return it->second;
  }

  VertexId add_vertex(Vertex v) {
    const VertexId id = next_vertex_++;
    vertices_.emplace(id, std::move(v));
    return id;
  }

  /// Inserts a vertex under a caller-chosen id.
  void insert_vertex(VertexId id, Vertex v) {
    if (id < 0) throw DiagramError("negative vertex id");
    if (!vertices_.emplace(id, std::move(v)).second)
      throw DiagramError("duplicate vertex id " + std::to_string(id));
    next_vertex_ = std::max(next_vertex_, id + 1);
  }

  /// Removes a vertex together with every wire touching it.
  void remove_vertex(VertexId v) {
    for (const auto& leg : legs(v))
      if (wires_.count(leg.wire)) disconnect(leg.wire);
    vertices_.erase(v);
  }

  WireId connect(Endpoint a, Endpoint b, bool classical = false) {
    return insert_wire(next_wire_, a, b, classical);
  }

  WireId insert_wire(WireId id, Endpoint a, Endpoint b, bool classical = false) {
    check_endpoint(a);
    check_endpoint(b);
    if (a == b) throw DiagramError("wire endpoints must differ");
    if (incidence_.count(a) || incidence_.count(b))
      throw DiagramError("endpoint already has a wire");
    if (!wires_.emplace(id, Wire{a, b, classical}).second)
      throw DiagramError("duplicate wire id " + std::to_string(id));
    incidence_.emplace(a, id);
    incidence_.emplace(b, id);
    next_wire_ = std::max(next_wire_, id + 1);
    return id;
  }

  void disconnect(WireId w) {
    auto it = wires_.find(w);
    if (it == wires_.end()) throw DiagramError("no wire " + std::to_string(w));
    incidence_.erase(it->second.a);
    incidence_.erase(it->second.b);
    wires_.erase(it);
  }

  /// Connects two free ports picked by free_port(); a == b yields a self-loop.
  WireId link(VertexId a, VertexId b, bool classical = false) {
    const Endpoint ea = free_port(a);
    if (a == b) {
      const Endpoint eb = free_port_excluding(b, ea.port);
      return connect(ea, eb, classical);
    }
    return connect(ea, free_port(b), classical);
  }
  WireId link(Endpoint a, VertexId b, bool classical = false) {
    return connect(a, free_port(b), classical);
  }
  WireId link(VertexId a, Endpoint b, bool classical = false) {
    return connect(free_port(a), b, classical);
  }

  std::optional<WireId> wire_at(const Endpoint& e) const {
    auto it = incidence_.find(e);
    if (it == incidence_.end()) return std::nullopt;
    return it->second;
  }

  /// The end of `w` that is not `from`.
  Endpoint other_end(WireId w, const Endpoint& from) const {
    const Wire& x = wire(w);
    if (x.a == from) return x.b;
    if (x.b == from) return x.a;
    throw DiagramError("endpoint is not on wire " + std::to_string(w));
  }

  std::vector<Leg> legs(VertexId v) const {
    std::vector<Leg> out;
    for (auto it = incidence_.lower_bound(Endpoint::at(v, INT_MIN));
         it != incidence_.end() && it->first.on_vertex() && it->first.id == v; ++it)
      out.push_back({it->first.port, it->second, other_end(it->second, it->first)});
    return out;
  }

  int degree(VertexId v) const { return static_cast<int>(legs(v).size()); }

  /// A port of `v` with no wire yet. Boxes need explicit ports.
  Endpoint free_port(VertexId v) const { return free_port_excluding(v, INT_MIN); }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t wire_count() const { return wires_.size(); }
  std::size_t count(VertexKind k) const {
    return static_cast<std::size_t>(std::count_if(
        vertices_.begin(), vertices_.end(), [k](const auto& kv) { return kv.second.kind == k; }));
  }

  /// Structural equality including ids; used for replay checks.
  bool operator==(const Diagram& o) const {
    if (inputs_ != o.inputs_ || outputs_ != o.outputs_ || scalar_ != o.scalar_) return false;
    if (vertices_ != o.vertices_ || wires_.size() != o.wires_.size()) return false;
    for (const auto& [id, w] : wires_) {
      auto it = o.wires_.find(id);
      if (it == o.wires_.end()) return false;
      const Wire& x = it->second;
      const bool same = (w.a == x.a && w.b == x.b) || (w.a == x.b && w.b == x.a);
      if (!same || w.classical != x.classical) return false;
    }
    return true;
  }

 private:
  void check_endpoint(const Endpoint& e) const {
    switch (e.side) {
      case Endpoint::Side::vertex:
        if (!vertices_.count(e.id)) throw DiagramError("wire to missing vertex " + std::to_string(e.id));
        if (e.port < 0) throw DiagramError("negative port");
        break;
      case Endpoint::Side::input:
        if (e.id < 0 || e.id >= inputs_) throw DiagramError("input position out of range");
        break;
      case Endpoint::Side::output:
        if (e.id < 0 || e.id >= outputs_) throw DiagramError("output position out of range");
        break;
    }
  }

  Endpoint free_port_excluding(VertexId v, int taken) const {
    const Vertex& x = vertex(v);
    switch (x.kind) {
      case VertexKind::spider: {
        int p = 0;
        for (const auto& leg : legs(v)) p = std::max(p, leg.port + 1);
        if (taken != INT_MIN) p = std::max(p, taken + 1);
        return Endpoint::at(v, p);
      }
      case VertexKind::hadamard:
        for (int p = 0; p < 2; ++p)
          if (p != taken && !incidence_.count(Endpoint::at(v, p))) return Endpoint::at(v, p);
        throw DiagramError("Hadamard " + std::to_string(v) + " has no free port");
      case VertexKind::environment:
      case VertexKind::point:
        if (taken != 0 && !incidence_.count(Endpoint::at(v, 0))) return Endpoint::at(v, 0);
        throw DiagramError("vertex " + std::to_string(v) + " has no free port");
      case VertexKind::box:
        throw DiagramError("box ports must be addressed explicitly");
    }
    throw DiagramError("unknown vertex kind");
  }

  int inputs_ = 0;
  int outputs_ = 0;
  Scalar scalar_;
  std::map<VertexId, Vertex> vertices_;
  std::map<WireId, Wire> wires_;
  std::map<Endpoint, WireId> incidence_;
  VertexId next_vertex_ = 0;
  WireId next_wire_ = 0;
};

struct Violation {
  std::string message;
  std::optional<VertexId> vertex;
  std::optional<WireId> wire;
};

/// Every invariant violation of `d`; empty means the diagram is well formed.
/// Box arities are additionally checked against `registry` when given.
inline std::vector<Violation> validate(const Diagram& d, const BoxRegistry* registry = nullptr) {
  std::vector<Violation> out;
  for (int i = 0; i < d.inputs(); ++i)
    if (!d.wire_at(Endpoint::in(i)))
      out.push_back({"input " + std::to_string(i) + " has no wire", std::nullopt, std::nullopt});
  for (int i = 0; i < d.outputs(); ++i)
    if (!d.wire_at(Endpoint::out(i)))
      out.push_back({"output " + std::to_string(i) + " has no wire", std::nullopt, std::nullopt});

  for (const auto& [id, v] : d.vertices()) {
    const auto legs = d.legs(id);
    const int deg = static_cast<int>(legs.size());
    switch (v.kind) {
      case VertexKind::spider: break;
      case VertexKind::hadamard:
        if (deg != 2) out.push_back({"Hadamard degree != 2", id, std::nullopt});
        for (const auto& l : legs)
          if (l.port > 1) out.push_back({"Hadamard port out of range", id, l.wire});
        break;
      case VertexKind::environment:
        if (deg != 1) out.push_back({"environment degree != 1", id, std::nullopt});
        for (const auto& l : legs)
          if (l.port != 0) out.push_back({"environment port out of range", id, l.wire});
        break;
      case VertexKind::point:
        if (deg != 1) out.push_back({"classical point degree != 1", id, std::nullopt});
        if (v.point_index != 0 && v.point_index != 1)
          out.push_back({"classical point index must be 0 or 1", id, std::nullopt});
        for (const auto& l : legs)
          if (l.port != 0) out.push_back({"classical point port out of range", id, l.wire});
        break;
      case VertexKind::box: {
        const int n = v.box_inputs + v.box_outputs;
        if (v.box_inputs < 0 || v.box_outputs < 0)
          out.push_back({"box arity negative", id, std::nullopt});
        std::vector<int> seen(static_cast<std::size_t>(std::max(n, 0)), 0);
        for (const auto& l : legs) {
          if (l.port >= n) {
            out.push_back({"box port out of range", id, l.wire});
            continue;
          }
          ++seen[static_cast<std::size_t>(l.port)];
        }
        for (int p = 0; p < n; ++p)
          if (seen[static_cast<std::size_t>(p)] != 1)
            out.push_back({"box port " + std::to_string(p) + " not wired exactly once", id,
                           std::nullopt});
        if (registry) {
          const BoxEntry* e = registry->find(v.box_name);
          if (!e) {
            out.push_back({"undeclared box '" + v.box_name + "'", id, std::nullopt});
          } else {
            const bool dg = has_dagger(v.variant);
            const int want_in = dg ? e->out_arity : e->in_arity;
            const int want_out = dg ? e->in_arity : e->out_arity;
            if (want_in != v.box_inputs || want_out != v.box_outputs)
              out.push_back({"box '" + v.box_name + "' arity disagrees with declaration", id,
                             std::nullopt});
          }
        }
        break;
      }
    }
  }
  return out;
}

inline bool is_valid(const Diagram& d, const BoxRegistry* registry = nullptr) {
  return validate(d, registry).empty();
}

class ArityError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

namespace detail {

/// Splices wire pieces whose ends may be internal junctions into plain
/// wires. Pieces that close into junction-only cycles become a spider with
/// a self-loop, which has the value of a closed loop.
struct Piece {
  struct End {
    bool junction = false;
    int j = 0;
    Endpoint e;
  };
  End a, b;
  bool classical = false;
};

inline void splice(Diagram& r, const std::vector<Piece>& pieces, int junctions) {
  std::vector<std::vector<int>> at(static_cast<std::size_t>(junctions));
  for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
    const auto& pc = pieces[static_cast<std::size_t>(p)];
    if (pc.a.junction) at[static_cast<std::size_t>(pc.a.j)].push_back(p);
    if (pc.b.junction) at[static_cast<std::size_t>(pc.b.j)].push_back(p);
  }
  std::vector<char> done(pieces.size(), 0);

  // Walk from real end `start` along piece p until a real end is reached.
  auto walk = [&](int p, const Piece::End& start) {
    bool classical = false;
    Piece::End cur = start;
    while (true) {
      done[static_cast<std::size_t>(p)] = 1;
      const auto& pc = pieces[static_cast<std::size_t>(p)];
      classical = classical || pc.classical;
      const bool from_a = !cur.junction ? (!pc.a.junction && pc.a.e == cur.e)
                                        : (pc.a.junction && pc.a.j == cur.j);
      const Piece::End next = from_a ? pc.b : pc.a;
      if (!next.junction) {
        r.connect(start.e, next.e, classical);
        return;
      }
      const auto& ps = at[static_cast<std::size_t>(next.j)];
      const int q = ps[0] == p ? ps[1] : ps[0];
      cur = next;
      p = q;
    }
  };

  for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
    if (done[static_cast<std::size_t>(p)]) continue;
    const auto& pc = pieces[static_cast<std::size_t>(p)];
    if (!pc.a.junction) walk(p, pc.a);
    else if (!pc.b.junction) walk(p, pc.b);
  }
  for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
    if (done[static_cast<std::size_t>(p)]) continue;
    // closed loop: mark the whole cycle
    int q = p;
    int j = pieces[static_cast<std::size_t>(p)].a.j;
    while (!done[static_cast<std::size_t>(q)]) {
      done[static_cast<std::size_t>(q)] = 1;
      const auto& pc = pieces[static_cast<std::size_t>(q)];
      const int nj = pc.a.j == j ? pc.b.j : pc.a.j;
      const auto& ps = at[static_cast<std::size_t>(nj)];
      q = ps[0] == q ? ps[1] : ps[0];
      j = nj;
    }
    const VertexId loop = r.add_vertex(Vertex::spider());
    r.link(loop, loop);
  }
}

inline Endpoint shift_vertex(Endpoint e, int offset) {
  if (e.on_vertex()) e.id += offset;
  return e;
}

}  // namespace detail

/// Sequential composition: d1 first, then d2, joined positionally.
inline Diagram compose_seq(const Diagram& d1, const Diagram& d2) {
  if (d1.outputs() != d2.inputs())
    throw ArityError("arity mismatch: " + std::to_string(d1.outputs()) +
                     " != " + std::to_string(d2.inputs()));
  Diagram r(d1.inputs(), d2.outputs());
  const int offset = d1.next_vertex_id();
  for (const auto& [id, v] : d1.vertices()) r.insert_vertex(id, v);
  for (const auto& [id, v] : d2.vertices()) r.insert_vertex(id + offset, v);

  using End = detail::Piece::End;
  std::vector<detail::Piece> pieces;
  for (const auto& [id, w] : d1.wires()) {
    auto map = [](const Endpoint& e) {
      if (e.side == Endpoint::Side::output) return End{true, e.id, {}};
      return End{false, 0, e};
    };
    pieces.push_back({map(w.a), map(w.b), w.classical});
  }
  for (const auto& [id, w] : d2.wires()) {
    auto map = [offset](const Endpoint& e) {
      if (e.side == Endpoint::Side::input) return End{true, e.id, {}};
      return End{false, 0, detail::shift_vertex(e, offset)};
    };
    pieces.push_back({map(w.a), map(w.b), w.classical});
  }
  detail::splice(r, pieces, d1.outputs());
  r.set_scalar(d1.scalar() * d2.scalar());
  return r;
}

/// Parallel composition; d2's boundary positions follow d1's.
inline Diagram compose_tensor(const Diagram& d1, const Diagram& d2) {
  Diagram r(d1.inputs() + d2.inputs(), d1.outputs() + d2.outputs());
  const int offset = d1.next_vertex_id();
  for (const auto& [id, v] : d1.vertices()) r.insert_vertex(id, v);
  for (const auto& [id, v] : d2.vertices()) r.insert_vertex(id + offset, v);
  for (const auto& [id, w] : d1.wires()) r.connect(w.a, w.b, w.classical);
  auto shift = [&](Endpoint e) {
    switch (e.side) {
      case Endpoint::Side::vertex: e.id += offset; break;
      case Endpoint::Side::input: e.id += d1.inputs(); break;
      case Endpoint::Side::output: e.id += d1.outputs(); break;
    }
    return e;
  };
  for (const auto& [id, w] : d2.wires()) r.connect(shift(w.a), shift(w.b), w.classical);
  r.set_scalar(d1.scalar() * d2.scalar());
  return r;
}

/// Upside-down reflection: boundaries swap sides and boxes toggle dagger.
inline Diagram dagger(const Diagram& d) {
  Diagram r(d.outputs(), d.inputs());
  for (const auto& [id, v] : d.vertices()) {
    Vertex x = v;
    if (x.is_box()) {
      x.variant = toggle_dagger(x.variant);
      std::swap(x.box_inputs, x.box_outputs);
    }
    r.insert_vertex(id, std::move(x));
  }
  auto flip = [&](Endpoint e) {
    switch (e.side) {
      case Endpoint::Side::input: e.side = Endpoint::Side::output; break;
      case Endpoint::Side::output: e.side = Endpoint::Side::input; break;
      case Endpoint::Side::vertex: {
        const Vertex& v = d.vertex(e.id);
        if (v.is_box()) {
          e.port = e.port < v.box_inputs ? v.box_outputs + e.port : e.port - v.box_inputs;
        }
        break;
      }
    }
    return e;
  };
  for (const auto& [id, w] : d.wires()) r.insert_wire(id, flip(w.a), flip(w.b), w.classical);
  r.set_scalar(d.scalar());
  return r;
}

/// Generator diagrams.
namespace gen {

inline Diagram empty() { return Diagram(0, 0); }

inline Diagram identity(int n) {
  Diagram d(n, n);
  for (int i = 0; i < n; ++i) d.connect(Endpoint::in(i), Endpoint::out(i));
  return d;
}

inline Diagram spider(int n, int m) {
  Diagram d(n, m);
  const VertexId s = d.add_vertex(Vertex::spider());
  for (int i = 0; i < n; ++i) d.connect(Endpoint::in(i), Endpoint::at(s, i));
  for (int j = 0; j < m; ++j) d.connect(Endpoint::at(s, n + j), Endpoint::out(j));
  return d;
}

inline Diagram hadamard() {
  Diagram d(1, 1);
  const VertexId h = d.add_vertex(Vertex::hadamard());
  d.connect(Endpoint::in(0), Endpoint::at(h, 0));
  d.connect(Endpoint::at(h, 1), Endpoint::out(0));
  return d;
}

/// The discarding effect.
inline Diagram ground() {
  Diagram d(1, 0);
  const VertexId e = d.add_vertex(Vertex::environment());
  d.connect(Endpoint::in(0), Endpoint::at(e, 0));
  return d;
}

/// Maximally mixed state, tagged so that its doubled value is I/2.
inline Diagram mix() {
  Diagram d(0, 1);
  const VertexId e = d.add_vertex(Vertex::environment());
  d.connect(Endpoint::at(e, 0), Endpoint::out(0));
  d.set_scalar(Scalar(0, -1));
  return d;
}

inline Diagram point(int index) {
  Diagram d(0, 1);
  const VertexId p = d.add_vertex(Vertex::point(index));
  d.connect(Endpoint::at(p, 0), Endpoint::out(0));
  return d;
}

inline Diagram cup() {
  Diagram d(0, 2);
  d.connect(Endpoint::out(0), Endpoint::out(1));
  return d;
}

inline Diagram cap() {
  Diagram d(2, 0);
  d.connect(Endpoint::in(0), Endpoint::in(1));
  return d;
}

inline Diagram swap() {
  Diagram d(2, 2);
  d.connect(Endpoint::in(0), Endpoint::out(1));
  d.connect(Endpoint::in(1), Endpoint::out(0));
  return d;
}

/// A box occurrence with `inputs`/`outputs` already oriented for `variant`.
inline Diagram box(const std::string& name, int inputs, int outputs,
                   BoxVariant variant = BoxVariant::plain) {
  Diagram d(inputs, outputs);
  const VertexId b = d.add_vertex(Vertex::box(name, inputs, outputs, variant));
  for (int i = 0; i < inputs; ++i) d.connect(Endpoint::in(i), Endpoint::at(b, i));
  for (int j = 0; j < outputs; ++j) d.connect(Endpoint::at(b, inputs + j), Endpoint::out(j));
  return d;
}

inline Diagram box(const BoxEntry& entry) {
  return box(entry.name, entry.in_arity, entry.out_arity);
}

}  // namespace gen

/// Tensor of several diagrams, left to right.
inline Diagram tensor_all(const std::vector<Diagram>& parts) {
  Diagram r;
  for (const auto& p : parts) r = compose_tensor(r, p);
  return r;
}

/// Sequential composition of several diagrams, first to last.
inline Diagram seq_all(const std::vector<Diagram>& parts) {
  if (parts.empty()) return gen::empty();
  Diagram r = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) r = compose_seq(r, parts[i]);
  return r;
}

}  // namespace diagcalc
