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
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcalc/strategy.hpp"

namespace diagcalc {

enum class Outcome { perfect_quantum_channel, shared_classical_data, disconnected };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::perfect_quantum_channel: return "perfect-quantum-channel";
    case Outcome::shared_classical_data: return "shared-classical-data";
    case Outcome::disconnected: return "disconnected";
  }
  return "?";
}

/// Wiring helper for hand-built figures. Vertex ids follow creation order.
class Net {
 public:
  Net(int inputs, int outputs) : d_(inputs, outputs) {}

  VertexId z() { return d_.add_vertex(Vertex::spider()); }
  VertexId h() { return d_.add_vertex(Vertex::hadamard()); }
  VertexId env() { return d_.add_vertex(Vertex::environment()); }
  VertexId point(int i) { return d_.add_vertex(Vertex::point(i)); }

  void join(VertexId a, VertexId b, bool classical = false) { d_.link(a, b, classical); }
  /// Joins a and b through a fresh Hadamard.
  VertexId hjoin(VertexId a, VertexId b) {
    const VertexId x = h();
    d_.link(a, x);
    d_.link(x, b);
    return x;
  }
  /// Attaches a fresh environment to v.
  VertexId ground(VertexId v) {
    const VertexId e = env();
    d_.link(v, e, true);
    return e;
  }
  void in(int i, VertexId v, bool classical = false) { d_.link(Endpoint::in(i), v, classical); }
  void out(int i, VertexId v, bool classical = false) { d_.link(v, Endpoint::out(i), classical); }
  void bare(int i, int o) { d_.connect(Endpoint::in(i), Endpoint::out(o)); }

  Diagram take() { return std::move(d_); }

 private:
  Diagram d_;
};

namespace gadget {

/// Decoherence: a spider with one leg discarded.
inline Diagram classical_channel() {
  Net n(1, 1);
  const VertexId s = n.z();
  n.in(0, s, true);
  n.ground(s);
  n.out(0, s, true);
  return n.take();
}

/// Non-destructive measurement: output 0 keeps the quantum system, output 1
/// carries the classical outcome.
inline Diagram measurement() {
  Net n(1, 2);
  const VertexId copy = n.z(), dec = n.z();
  n.in(0, copy);
  n.out(0, copy);
  n.join(copy, dec);
  n.ground(dec);
  n.out(1, dec, true);
  return n.take();
}

/// Measurement whose quantum output is discarded.
inline Diagram destructive_measurement() {
  Net n(1, 1);
  const VertexId s = n.z();
  n.in(0, s);
  n.ground(s);
  n.out(0, s, true);
  return n.take();
}

/// Controlled phase flip with a classical control: input/output 0 is the
/// control, input/output 1 the target.
inline Diagram controlled_z() {
  Net n(2, 2);
  const VertexId c = n.z(), t = n.z();
  n.in(0, c, true);
  n.ground(c);
  n.out(0, c, true);
  n.hjoin(c, t);
  n.in(1, t);
  n.out(1, t);
  return n.take();
}

/// Controlled bit flip with a classical control; the target is an
/// H-conjugated spider.
inline Diagram controlled_x() {
  Net n(2, 2);
  const VertexId c = n.z(), t = n.z();
  n.in(0, c, true);
  n.ground(c);
  n.out(0, c, true);
  n.hjoin(c, t);
  const VertexId hi = n.h(), ho = n.h();
  n.in(1, hi);
  n.join(hi, t);
  n.join(t, ho);
  n.out(1, ho);
  return n.take();
}

/// CNOT on two quantum wires, control first.
inline Diagram cnot() {
  Net n(2, 2);
  const VertexId c = n.z(), t = n.z();
  n.in(0, c);
  n.out(0, c);
  n.hjoin(c, t);
  const VertexId hi = n.h(), ho = n.h();
  n.in(1, hi);
  n.join(hi, t);
  n.join(t, ho);
  n.out(1, ho);
  return n.take();
}

/// The (unnormalized) Bell state |00> + |11>.
inline Diagram bell_state() { return gen::spider(0, 2); }

/// Destructive Bell-basis measurement with two classical outputs.
inline Diagram bell_measurement() {
  return seq_all({cnot(), compose_tensor(gen::hadamard(), gen::identity(1)),
                  compose_tensor(destructive_measurement(), destructive_measurement())});
}

/// Destructive measurement in the product basis of two systems.
inline Diagram product_measurement() {
  return compose_tensor(destructive_measurement(), destructive_measurement());
}

/// Destructive measurement in the basis picked out by the unitary box `u`.
inline Diagram nondegenerate_measurement(const std::string& u = "U") {
  return compose_seq(gen::box(u, 2, 2), product_measurement());
}

}  // namespace gadget

/// Registry used by the built-in cases: U is the Bell-basis change
/// (H x I) CNOT and V the copying isometry |i> -> |ii>.
inline const BoxRegistry& default_registry() {
  static const BoxRegistry reg = [] {
    BoxRegistry r;
    const double s = M_SQRT1_2;
    CMatrix u{{s, 0, 0, s}, {0, s, s, 0}, {s, 0, 0, -s}, {0, s, -s, 0}};
    BoxFlags fu;
    fu.unitary = true;
    r.add({"U", 2, 2, fu, u});
    CMatrix v{{1, 0}, {0, 0}, {0, 0}, {0, 1}};
    BoxFlags fv;
    fv.isometry = true;
    r.add({"V", 1, 2, fv, v});
    r.freeze();
    return r;
  }();
  return reg;
}

struct ProtocolCase {
  std::string name;
  std::string title;
  Diagram protocol;
  Diagram expected;
  std::optional<Outcome> outcome;
};

class UnknownCaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline ProtocolCase teleportation() {
  Net n(1, 1);
  // Alice's Bell measurement: her input f, her half t of the Bell pair.
  const VertexId f = n.z(), t = n.z();
  // Classical outcomes, each decohered.
  const VertexId m1 = n.z(), m2 = n.z();
  // Bob's corrections: X then Z.
  const VertexId gx = n.z(), gz = n.z();
  n.in(0, f);
  n.hjoin(f, t);
  n.hjoin(f, m1);
  n.hjoin(t, m2);
  const VertexId h1 = n.h(), hx1 = n.h();
  n.join(t, h1);
  n.join(h1, hx1);
  n.join(hx1, gx);
  n.hjoin(gx, m2);
  n.hjoin(gx, gz);
  n.hjoin(gz, m1);
  n.out(0, gz);
  n.ground(m1);
  n.ground(m2);

  Net e(1, 1);
  e.bare(0, 0);
  e.ground(e.z());
  e.ground(e.z());
  return {"teleportation", "correctness of teleportation", n.take(), e.take(), Outcome::perfect_quantum_channel};
}

inline ProtocolCase state_transfer() {
  Net n(1, 1);
  const VertexId f = n.z(), gdot = n.z(), g1 = n.z(), gz = n.z();
  const VertexId g2 = n.z();  // the |+> ancilla, unnormalized
  n.in(0, f);
  n.hjoin(f, gdot);
  n.hjoin(f, g1);
  n.hjoin(gdot, gz);
  const VertexId h1 = n.h(), h4 = n.h();
  n.join(gdot, h1);
  n.join(h1, h4);
  n.join(h4, g2);
  n.ground(g1);
  n.hjoin(g1, gz);
  n.out(0, gz);

  Net e(1, 1);
  e.bare(0, 0);
  e.ground(e.z());
  return {"state-transfer", "correctness of state transfer", n.take(), e.take(), Outcome::perfect_quantum_channel};
}

inline ProtocolCase dense_coding() {
  Net n(2, 2);
  const VertexId f = n.z(), gdot = n.z(), g1 = n.z(), g2 = n.z();
  const VertexId gx = n.z(), gz = n.z(), gc3 = n.z(), gc4 = n.z();
  n.hjoin(f, gdot);
  n.hjoin(f, g1);
  n.join(f, gz);
  n.hjoin(gdot, g2);
  const VertexId h1 = n.h(), hx2 = n.h();
  n.join(gdot, h1);
  n.join(h1, hx2);
  n.join(hx2, gx);
  n.hjoin(gx, gz);
  n.hjoin(gx, gc3);
  n.hjoin(gz, gc4);
  n.ground(g1);
  n.out(0, g1, true);
  n.ground(g2);
  n.out(1, g2, true);
  n.ground(gc4);
  n.in(0, gc4, true);
  n.ground(gc3);
  n.in(1, gc3, true);

  Net e(2, 2);
  for (int i = 0; i < 2; ++i) {
    const VertexId s = e.z();
    e.in(i, s, true);
    e.out(i, s, true);
    e.ground(s);
  }
  return {"dense-coding", "correctness of dense coding", n.take(), e.take(), Outcome::shared_classical_data};
}

inline ProtocolCase ekert_same() {
  Net n(0, 2);
  const VertexId b2 = n.z(), b1 = n.z();
  n.out(0, b2, true);
  n.ground(b2);
  n.join(b2, b1);
  n.out(1, b1, true);
  n.ground(b1);

  Net e(0, 2);
  const VertexId s = e.z();
  e.out(0, s, true);
  e.out(1, s, true);
  e.ground(s);
  return {"ekert-same", "correctness of Ekert 91, equal bases", n.take(), e.take(), Outcome::shared_classical_data};
}

inline ProtocolCase ekert_diff() {
  Net n(0, 2);
  const VertexId b2 = n.z(), b1 = n.z();
  n.out(0, b2, true);
  n.ground(b2);
  n.hjoin(b2, b1);
  n.ground(b1);
  const VertexId h2 = n.h();
  n.join(b1, h2);
  n.out(1, h2, true);

  Net e(0, 2);
  e.out(0, e.env(), true);
  e.out(1, e.env(), true);
  return {"ekert-diff", "correctness of Ekert 91, different bases", n.take(), e.take(), Outcome::disconnected};
}

inline ProtocolCase bb84(bool same) {
  Net n(1, 2);
  const VertexId b1 = n.z(), b2 = n.z(), b3 = n.z();
  n.in(0, b1, true);
  n.ground(b1);
  if (same) n.join(b1, b2);
  else n.hjoin(b1, b2);
  n.ground(b2);
  n.out(0, b2, true);  // Eve
  if (same) n.join(b2, b3);
  else n.hjoin(b2, b3);
  n.ground(b3);
  n.out(1, b3, true);  // Bob

  Net e(1, 2);
  if (same) {
    const VertexId s = e.z();
    e.in(0, s, true);
    e.out(0, s, true);
    e.out(1, s, true);
    e.ground(s);
    return {"bb84-same", "correctness of BB84, equal bases", n.take(), e.take(), Outcome::shared_classical_data};
  }
  e.in(0, e.env(), true);
  e.out(0, e.env(), true);
  e.out(1, e.env(), true);
  return {"bb84-diff", "correctness of BB84, different bases", n.take(), e.take(), Outcome::disconnected};
}

inline ProtocolCase extra(const std::string& name) {
  using namespace gadget;
  const Diagram c = classical_channel();
  if (name == "channel-idempotence")
    return {name, "classical channels are idempotent", compose_seq(c, c), c, std::nullopt};
  if (name == "point-invariance-0" || name == "point-invariance-1") {
    const int i = name.back() - '0';
    return {name, "classical points are fixed by the classical channel", compose_seq(gen::point(i), c),
            gen::point(i), std::nullopt};
  }
  if (name == "unbiased-point")
    return {name, "decohering an unbiased point gives the maximally mixed state",
            seq_all({gen::point(0), gen::hadamard(), c}), gen::mix(), std::nullopt};
  if (name == "complementary-channels")
    return {name, "complementary classical channels disconnect",
            seq_all({c, gen::hadamard(), c, gen::hadamard(), c}), compose_seq(gen::ground(), gen::mix()),
            Outcome::disconnected};
  if (name == "destructive-measurement")
    return {name, "discarding the quantum output of a measurement",
            compose_seq(measurement(), compose_tensor(gen::ground(), gen::identity(1))), destructive_measurement(),
            Outcome::shared_classical_data};
  if (name == "measurement-spread") {
    Net e(1, 3);
    const VertexId s = e.z();
    e.in(0, s);
    e.out(0, s);
    e.out(1, s, true);
    e.out(2, s, true);
    e.ground(s);
    return {name, "repeated measurement shares one outcome",
            compose_seq(measurement(), compose_tensor(measurement(), gen::identity(1))), e.take(),
            Outcome::shared_classical_data};
  }
  if (name == "cnot-unitary")
    return {name, "CNOT is unitary", compose_seq(cnot(), dagger(cnot())), gen::identity(2),
            Outcome::perfect_quantum_channel};
  if (name == "controlled-z-unitary")
    return {name, "classically controlled phase flip is unitary", compose_seq(controlled_z(), dagger(controlled_z())),
            compose_tensor(classical_channel(), gen::identity(1)), std::nullopt};
  if (name == "controlled-x-unitary")
    return {name, "classically controlled bit flip is unitary", compose_seq(controlled_x(), dagger(controlled_x())),
            compose_tensor(classical_channel(), gen::identity(1)), std::nullopt};
  if (name == "measurement-discard")
    return {name, "a discarded non-degenerate measurement is a discard",
            compose_seq(nondegenerate_measurement(), compose_tensor(gen::ground(), gen::ground())),
            compose_tensor(gen::ground(), gen::ground()), Outcome::disconnected};
  throw UnknownCaseError("unknown case '" + name + "'");
}

}  // namespace detail

/// The seven protocol cases, in a fixed order.
inline const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names = {"teleportation", "state-transfer", "dense-coding", "ekert-same",
                                                 "ekert-diff",    "bb84-same",      "bb84-diff"};
  return names;
}

/// Further cases covering the gadget-level propositions.
inline const std::vector<std::string>& extra_case_names() {
  static const std::vector<std::string> names = {
      "channel-idempotence",     "point-invariance-0", "point-invariance-1",   "unbiased-point",
      "complementary-channels",  "destructive-measurement", "measurement-spread", "cnot-unitary",
      "controlled-z-unitary",    "controlled-x-unitary",    "measurement-discard"};
  return names;
}

inline ProtocolCase build(const std::string& name) {
  if (name == "teleportation") return detail::teleportation();
  if (name == "state-transfer") return detail::state_transfer();
  if (name == "dense-coding") return detail::dense_coding();
  if (name == "ekert-same") return detail::ekert_same();
  if (name == "ekert-diff") return detail::ekert_diff();
  if (name == "bb84-same") return detail::bb84(true);
  if (name == "bb84-diff") return detail::bb84(false);
  return detail::extra(name);
}

namespace detail {

/// Boundary-touching connected components of `d`, as vertex sets plus the
/// boundary endpoints they reach. Bare wires form components without vertices.
struct Component {
  std::set<VertexId> vertices;
  std::vector<Endpoint> boundary;
};

inline std::vector<Component> boundary_components(const Diagram& d) {
  std::vector<Component> out;
  std::set<VertexId> seen;
  std::set<WireId> bare_seen;
  auto grow = [&](Component& c, VertexId start) {
    std::vector<VertexId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      c.vertices.insert(v);
      for (const auto& l : d.legs(v)) {
        if (l.far.on_boundary()) c.boundary.push_back(l.far);
        else if (!seen.count(l.far.id)) {
          seen.insert(l.far.id);
          stack.push_back(l.far.id);
        }
      }
    }
  };
  for (const auto& [id, w] : d.wires()) {
    if (w.a.on_boundary() && w.b.on_boundary()) {
      if (bare_seen.insert(id).second) out.push_back({{}, {w.a, w.b}});
      continue;
    }
    const Endpoint& v = w.a.on_vertex() ? w.a : w.b;
    const Endpoint& b = w.a.on_vertex() ? w.b : w.a;
    if (!b.on_boundary() || seen.count(v.id)) continue;
    Component c;
    grow(c, v.id);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Whether the boundary structure of a normal form matches `o`.
inline bool outcome_holds(const Diagram& d, Outcome o) {
  const auto comps = detail::boundary_components(d);
  for (const auto& c : comps) {
    switch (o) {
      case Outcome::perfect_quantum_channel: {
        if (!c.vertices.empty() || c.boundary.size() != 2) return false;
        const auto& a = c.boundary[0];
        const auto& b = c.boundary[1];
        if (a.side == b.side || a.id != b.id) return false;
        break;
      }
      case Outcome::shared_classical_data: {
        if (c.vertices.size() != 2) return false;
        int spiders = 0, envs = 0;
        for (VertexId v : c.vertices) {
          spiders += d.vertex(v).is_spider();
          envs += d.vertex(v).is_environment();
        }
        if (spiders != 1 || envs != 1) return false;
        break;
      }
      case Outcome::disconnected: {
        if (c.vertices.size() != 1 || !d.vertex(*c.vertices.begin()).is_environment()) return false;
        break;
      }
    }
  }
  return true;
}

struct CaseReport {
  std::string name;
  std::string title;
  Report report;
  std::optional<Outcome> outcome;
  bool outcome_met = true;

  bool pass() const { return report.pass() && outcome_met; }
};

/// Normalizes a case's protocol and expected diagrams and checks both the
/// graph and the semantics of the claim.
inline CaseReport verify(const std::string& name, const Strategy& s = {}, double tol = 1e-9,
                         ScalarPolicy policy = ScalarPolicy::ray) {
  ProtocolCase pc = build(name);
  CaseReport r;
  r.name = pc.name;
  r.title = pc.title;
  r.report = prove_equal(pc.protocol, pc.expected, s, &default_registry(), tol, policy);
  r.outcome = pc.outcome;
  if (pc.outcome) r.outcome_met = outcome_holds(r.report.left.final, *pc.outcome);
  return r;
}

}  // namespace diagcalc
