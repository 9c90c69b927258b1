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
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcalc/box_registry.hpp"
#include "diagcalc/diagram.hpp"

namespace diagcalc {

enum class SoundnessClass { axiom, derived, box_flag_conditional };

inline const char* to_string(SoundnessClass c) {
  switch (c) {
    case SoundnessClass::axiom: return "axiom";
    case SoundnessClass::derived: return "derived";
    case SoundnessClass::box_flag_conditional: return "box-flag-conditional";
  }
  return "?";
}

/// An occurrence of a rule's trigger pattern. `vertices` lists the consumed
/// vertices in the rule's role order; `key` orders matches deterministically
/// and starts with the smallest consumed vertex id.
struct Match {
  std::string rule;
  std::vector<VertexId> vertices;
  std::vector<WireId> wires;
  std::vector<int> key;

  bool operator==(const Match&) const = default;
};

class StaleMatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownRuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rule {
  std::string id;    // "R1", "R6b", ...
  std::string name;  // "spider-fusion", ...
  SoundnessClass soundness = SoundnessClass::axiom;
  /// Factor applied to the scalar tag so the rewrite is exact.
  Scalar delta;
  std::function<std::vector<Match>(const Diagram&, const BoxRegistry*)> find;
  std::function<void(Diagram&, const Match&, const BoxRegistry*)> rewrite;
};

namespace detail {

inline Match make_match(const std::string& rule, std::vector<VertexId> vs, std::vector<WireId> ws) {
  Match m{rule, std::move(vs), std::move(ws), {}};
  m.key.push_back(*std::min_element(m.vertices.begin(), m.vertices.end()));
  m.key.insert(m.key.end(), m.vertices.begin(), m.vertices.end());
  m.key.push_back(-1);
  m.key.insert(m.key.end(), m.wires.begin(), m.wires.end());
  return m;
}

inline std::vector<Match> sorted(std::vector<Match> ms) {
  std::sort(ms.begin(), ms.end(), [](const Match& a, const Match& b) { return a.key < b.key; });
  return ms;
}

inline bool far_is(const Diagram& d, const Leg& l, VertexKind k) {
  return l.far.on_vertex() && d.vertex(l.far.id).kind == k;
}

/// Environment vertices attached to `v`, in id order.
inline std::vector<VertexId> env_neighbours(const Diagram& d, VertexId v) {
  std::vector<VertexId> out;
  for (const auto& l : d.legs(v))
    if (far_is(d, l, VertexKind::environment)) out.push_back(l.far.id);
  std::sort(out.begin(), out.end());
  return out;
}

/// The leg of a degree-2 vertex other than the one carried by wire `w`.
inline Leg other_leg(const Diagram& d, VertexId v, WireId w) {
  for (const auto& l : d.legs(v))
    if (l.wire != w) return l;
  throw DiagramError("vertex " + std::to_string(v) + " has no other leg");
}

inline void attach(Diagram& d, const Vertex& kind, const Endpoint& far, bool classical) {
  const VertexId n = d.add_vertex(kind);
  d.connect(Endpoint::at(n, 0), far, classical);
}

// R1: merge the higher-id spider into the lower one.
inline std::vector<Match> find_fusion(const Diagram& d, const BoxRegistry*) {
  std::map<std::pair<VertexId, VertexId>, std::vector<WireId>> pairs;
  for (const auto& [id, w] : d.wires()) {
    if (!w.a.on_vertex() || !w.b.on_vertex() || w.a.id == w.b.id) continue;
    if (!d.vertex(w.a.id).is_spider() || !d.vertex(w.b.id).is_spider()) continue;
    pairs[{std::min(w.a.id, w.b.id), std::max(w.a.id, w.b.id)}].push_back(id);
  }
  std::vector<Match> out;
  for (auto& [uv, ws] : pairs) out.push_back(make_match("R1", {uv.first, uv.second}, ws));
  return out;
}

inline void rewrite_fusion(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId u = m.vertices[0], v = m.vertices[1];
  std::set<WireId> handled;
  for (const auto& l : d.legs(v)) {
    if (handled.count(l.wire)) continue;
    handled.insert(l.wire);
    const bool classical = d.wire(l.wire).classical;
    d.disconnect(l.wire);
    if (l.far.on_vertex() && l.far.id == u) continue;
    if (l.far.on_vertex() && l.far.id == v) d.link(u, u, classical);
    else d.connect(d.free_port(u), l.far, classical);
  }
  // One u-v wire is used up by the fusion; the rest close into self-loops.
  for (std::size_t k = 1; k < m.wires.size(); ++k) d.link(u, u);
  d.remove_vertex(v);
}

// R2: delete a self-loop on a spider.
inline std::vector<Match> find_self_loop(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, w] : d.wires())
    if (w.is_self_loop() && d.vertex(w.a.id).is_spider()) out.push_back(make_match("R2", {w.a.id}, {id}));
  return out;
}

inline void rewrite_self_loop(Diagram& d, const Match& m, const BoxRegistry*) {
  d.disconnect(m.wires[0]);
}

// R3: a spider with two distinct wires is a plain wire.
inline std::vector<Match> find_identity_spider(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_spider()) continue;
    const auto legs = d.legs(id);
    if (legs.size() != 2 || legs[0].wire == legs[1].wire) continue;
    out.push_back(make_match("R3", {id}, {std::min(legs[0].wire, legs[1].wire), std::max(legs[0].wire, legs[1].wire)}));
  }
  return out;
}

inline void rewrite_identity_spider(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId s = m.vertices[0];
  const auto legs = d.legs(s);
  const bool classical = d.wire(legs[0].wire).classical || d.wire(legs[1].wire).classical;
  d.remove_vertex(s);
  d.connect(legs[0].far, legs[1].far, classical);
}

// R4: adjacent Hadamards cancel.
inline std::vector<Match> find_hh(const Diagram& d, const BoxRegistry*) {
  std::map<std::pair<VertexId, VertexId>, std::vector<WireId>> pairs;
  for (const auto& [id, w] : d.wires()) {
    if (!w.a.on_vertex() || !w.b.on_vertex() || w.a.id == w.b.id) continue;
    if (!d.vertex(w.a.id).is_hadamard() || !d.vertex(w.b.id).is_hadamard()) continue;
    pairs[{std::min(w.a.id, w.b.id), std::max(w.a.id, w.b.id)}].push_back(id);
  }
  std::vector<Match> out;
  for (auto& [hh, ws] : pairs) out.push_back(make_match("R4", {hh.first, hh.second}, ws));
  return out;
}

inline void rewrite_hh(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId h1 = m.vertices[0], h2 = m.vertices[1];
  if (m.wires.size() == 2) {
    // H;H closed on itself is a loop, worth the dimension.
    d.remove_vertex(h1);
    d.remove_vertex(h2);
    d.add_vertex(Vertex::spider());
    return;
  }
  const Leg a = other_leg(d, h1, m.wires[0]);
  const Leg b = other_leg(d, h2, m.wires[0]);
  const bool classical = d.wire(a.wire).classical || d.wire(b.wire).classical;
  d.remove_vertex(h1);
  d.remove_vertex(h2);
  d.connect(a.far, b.far, classical);
}

/// Hadamards with one leg on u and the other on v, u != v, per spider pair.
inline std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> h_bridges(const Diagram& d) {
  std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_hadamard()) continue;
    const auto legs = d.legs(id);
    if (legs.size() != 2) continue;
    if (!far_is(d, legs[0], VertexKind::spider) || !far_is(d, legs[1], VertexKind::spider)) continue;
    const VertexId a = legs[0].far.id, b = legs[1].far.id;
    if (a == b) continue;
    out[{std::min(a, b), std::max(a, b)}].push_back(id);
  }
  return out;
}

inline std::vector<WireId> wires_of(const Diagram& d, const std::vector<VertexId>& vs) {
  std::set<WireId> ws;
  for (VertexId v : vs)
    for (const auto& l : d.legs(v)) ws.insert(l.wire);
  return {ws.begin(), ws.end()};
}

// R5: two H-paths between the same pair of spiders disconnect.
inline std::vector<Match> find_hopf(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [uv, hs] : h_bridges(d)) {
    if (hs.size() < 2) continue;
    const std::vector<VertexId> two{hs[0], hs[1]};
    out.push_back(make_match("R5", {uv.first, uv.second, hs[0], hs[1]}, wires_of(d, two)));
  }
  return out;
}

inline void rewrite_hopf(Diagram& d, const Match& m, const BoxRegistry*) {
  d.remove_vertex(m.vertices[2]);
  d.remove_vertex(m.vertices[3]);
}

// R6a: several environments on one spider collapse to one.
inline std::vector<Match> find_ground_merge(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_spider()) continue;
    const auto envs = env_neighbours(d, id);
    if (envs.size() < 2) continue;
    std::vector<VertexId> vs{id};
    vs.insert(vs.end(), envs.begin(), envs.end());
    out.push_back(make_match("R6a", vs, wires_of(d, envs)));
  }
  return out;
}

inline void rewrite_ground_merge(Diagram& d, const Match& m, const BoxRegistry*) {
  for (std::size_t k = 2; k < m.vertices.size(); ++k) d.remove_vertex(m.vertices[k]);
}

// R6b: an environment swallows a Hadamard.
inline std::vector<Match> find_ground_h(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_environment()) continue;
    for (const auto& l : d.legs(id))
      if (far_is(d, l, VertexKind::hadamard))
        out.push_back(make_match("R6b", {id, l.far.id}, wires_of(d, {l.far.id})));
  }
  return out;
}

inline void rewrite_ground_h(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId e = m.vertices[0], h = m.vertices[1];
  const WireId w = d.legs(e).at(0).wire;
  const Leg far = other_leg(d, h, w);
  const bool classical = d.wire(far.wire).classical;
  d.remove_vertex(e);
  d.remove_vertex(h);
  attach(d, Vertex::environment(), far.far, classical);
}

// R6c: an isometry whose outputs are all discarded is discarded itself.
inline bool discards_as_isometry(const Vertex& v, const BoxRegistry* registry) {
  if (!registry) return false;
  const BoxEntry* e = registry->find(v.box_name);
  if (!e) return false;
  if (e->flags.unitary) return true;
  return e->flags.isometry && !has_dagger(v.variant);
}

inline std::vector<Match> find_ground_isometry(const Diagram& d, const BoxRegistry* registry) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_box() || !discards_as_isometry(v, registry)) continue;
    bool ok = true;
    std::vector<VertexId> envs;
    for (const auto& l : d.legs(id)) {
      if (l.far.on_vertex() && l.far.id == id) ok = false;
      if (l.port >= v.box_inputs) {
        if (far_is(d, l, VertexKind::environment)) envs.push_back(l.far.id);
        else ok = false;
      }
    }
    if (!ok || static_cast<int>(envs.size()) != v.box_outputs) continue;
    std::vector<VertexId> vs{id};
    vs.insert(vs.end(), envs.begin(), envs.end());
    out.push_back(make_match("R6c", vs, wires_of(d, {id})));
  }
  return out;
}

inline void rewrite_ground_isometry(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId b = m.vertices[0];
  const int n_in = d.vertex(b).box_inputs;
  std::vector<std::pair<Endpoint, bool>> fars;
  for (const auto& l : d.legs(b))
    if (l.port < n_in) fars.emplace_back(l.far, d.wire(l.wire).classical);
  for (std::size_t k = 1; k < m.vertices.size(); ++k) d.remove_vertex(m.vertices[k]);
  d.remove_vertex(b);
  for (const auto& [far, classical] : fars) attach(d, Vertex::environment(), far, classical);
}

// R7: a spider holding a classical point copies it onto its other legs.
inline std::vector<Match> find_copy_point(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_spider()) continue;
    for (const auto& l : d.legs(id))
      if (far_is(d, l, VertexKind::point)) out.push_back(make_match("R7", {id, l.far.id}, {l.wire}));
  }
  return out;
}

inline void rewrite_copy_point(Diagram& d, const Match& m, const BoxRegistry*) {
  const VertexId s = m.vertices[0], p = m.vertices[1];
  const Vertex pt = d.vertex(p);
  std::set<WireId> handled{m.wires[0]};
  std::vector<std::pair<Endpoint, bool>> fars;
  int loops = 0;
  for (const auto& l : d.legs(s)) {
    if (handled.count(l.wire)) continue;
    handled.insert(l.wire);
    if (l.far.on_vertex() && l.far.id == s) ++loops;
    else fars.emplace_back(l.far, d.wire(l.wire).classical);
  }
  d.remove_vertex(p);
  d.remove_vertex(s);
  for (const auto& [far, classical] : fars) attach(d, pt, far, classical);
  for (int k = 0; k < loops; ++k) {
    const VertexId a = d.add_vertex(pt);
    const VertexId b = d.add_vertex(pt);
    d.link(a, b);
  }
}

// R8: a discarded classical point is a normalized scalar.
inline std::vector<Match> find_point_ground(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_point()) continue;
    for (const auto& l : d.legs(id))
      if (far_is(d, l, VertexKind::environment)) out.push_back(make_match("R8", {id, l.far.id}, {l.wire}));
  }
  return out;
}

inline void rewrite_point_ground(Diagram& d, const Match& m, const BoxRegistry*) {
  d.remove_vertex(m.vertices[0]);
  d.remove_vertex(m.vertices[1]);
}

// R9: a decohering spider erases an unbiased point.
inline std::vector<Match> find_unbiased_point(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [id, v] : d.vertices()) {
    if (!v.is_spider() || env_neighbours(d, id).empty()) continue;
    for (const auto& l : d.legs(id)) {
      if (!far_is(d, l, VertexKind::hadamard)) continue;
      const Leg o = other_leg(d, l.far.id, l.wire);
      if (!far_is(d, o, VertexKind::point)) continue;
      out.push_back(make_match("R9", {id, l.far.id, o.far.id}, {std::min(l.wire, o.wire), std::max(l.wire, o.wire)}));
    }
  }
  return out;
}

inline void rewrite_unbiased_point(Diagram& d, const Match& m, const BoxRegistry*) {
  d.remove_vertex(m.vertices[1]);
  d.remove_vertex(m.vertices[2]);
}

// R10: decohering spiders joined by one Hadamard disconnect.
inline std::vector<Match> find_complementary_channel(const Diagram& d, const BoxRegistry*) {
  std::vector<Match> out;
  for (const auto& [uv, hs] : h_bridges(d)) {
    if (env_neighbours(d, uv.first).empty() || env_neighbours(d, uv.second).empty()) continue;
    for (VertexId h : hs) out.push_back(make_match("R10", {uv.first, uv.second, h}, wires_of(d, {h})));
  }
  return out;
}

inline void rewrite_complementary_channel(Diagram& d, const Match& m, const BoxRegistry*) {
  d.remove_vertex(m.vertices[2]);
}

}  // namespace detail

/// R1 to R10 in catalog order.
inline const std::vector<Rule>& rule_catalog() {
  using S = SoundnessClass;
  static const std::vector<Rule> rules = {
      {"R1", "spider-fusion", S::axiom, Scalar(), detail::find_fusion, detail::rewrite_fusion},
      {"R2", "self-loop-elim", S::axiom, Scalar(), detail::find_self_loop, detail::rewrite_self_loop},
      {"R3", "identity-spider", S::axiom, Scalar(), detail::find_identity_spider, detail::rewrite_identity_spider},
      {"R4", "hh-cancel", S::axiom, Scalar(), detail::find_hh, detail::rewrite_hh},
      {"R5", "hopf", S::derived, Scalar(-1, 0), detail::find_hopf, detail::rewrite_hopf},
      {"R6a", "ground-merge", S::derived, Scalar(), detail::find_ground_merge, detail::rewrite_ground_merge},
      {"R6b", "ground-absorbs-h", S::derived, Scalar(), detail::find_ground_h, detail::rewrite_ground_h},
      {"R6c", "ground-absorbs-isometry", S::box_flag_conditional, Scalar(), detail::find_ground_isometry,
       detail::rewrite_ground_isometry},
      {"R7", "copy-point", S::derived, Scalar(), detail::find_copy_point, detail::rewrite_copy_point},
      {"R8", "point-normalization", S::derived, Scalar(), detail::find_point_ground, detail::rewrite_point_ground},
      {"R9", "unbiased-point", S::derived, Scalar(0, -1), detail::find_unbiased_point,
       detail::rewrite_unbiased_point},
      {"R10", "complementary-channel-disconnect", S::derived, Scalar(0, -1),
       detail::find_complementary_channel, detail::rewrite_complementary_channel},
  };
  return rules;
}

/// Looks a rule up by id ("R4") or name ("hh-cancel").
inline const Rule& rule(const std::string& id_or_name) {
  for (const auto& r : rule_catalog())
    if (r.id == id_or_name || r.name == id_or_name) return r;
  throw UnknownRuleError("unknown rule '" + id_or_name + "'");
}

/// Resolves a rule selector; "R6" stands for R6a, R6b and R6c.
inline std::vector<const Rule*> select_rules(const std::vector<std::string>& selectors) {
  std::vector<const Rule*> out;
  for (const auto& s : selectors) {
    if (s == "R6") {
      for (const char* x : {"R6a", "R6b", "R6c"}) out.push_back(&rule(x));
      continue;
    }
    out.push_back(&rule(s));
  }
  return out;
}

/// Every occurrence of `r` in `d`, ordered by key.
inline std::vector<Match> find_matches(const Rule& r, const Diagram& d, const BoxRegistry* registry = nullptr) {
  return detail::sorted(r.find(d, registry));
}

/// Rewrites `d` at `m`. The match must be one find_matches reports on `d`.
inline Diagram apply(const Rule& r, const Match& m, const Diagram& d, const BoxRegistry* registry = nullptr) {
  if (m.rule != r.id) throw StaleMatchError("match belongs to rule " + m.rule + ", not " + r.id);
  for (VertexId v : m.vertices)
    if (!d.has_vertex(v)) throw StaleMatchError("stale match: vertex " + std::to_string(v) + " is gone");
  for (WireId w : m.wires)
    if (!d.has_wire(w)) throw StaleMatchError("stale match: wire " + std::to_string(w) + " is gone");
  const auto current = r.find(d, registry);
  if (std::find(current.begin(), current.end(), m) == current.end())
    throw StaleMatchError("stale match: pattern of " + r.id + " no longer present");
  Diagram out = d;
  r.rewrite(out, m, registry);
  out.multiply_scalar(r.delta);
  return out;
}

}  // namespace diagcalc
