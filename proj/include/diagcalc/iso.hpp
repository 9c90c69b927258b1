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
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "diagcalc/diagram.hpp"

namespace diagcalc {

namespace detail {

/// Multigraph view of a diagram for isomorphism search. Nodes 0..n-1 are
/// vertices (in id order); boundary positions are fixed nodes after them.
struct IsoGraph {
  struct Edge {
    int other;
    int my_label;
    int other_label;
    auto operator<=>(const Edge&) const = default;
  };

  std::vector<VertexId> ids;
  std::vector<std::string> label;
  std::vector<std::vector<Edge>> adj;  // includes boundary nodes
  int vertex_nodes = 0;

  explicit IsoGraph(const Diagram& d) {
    std::map<VertexId, int> index;
    for (const auto& [id, v] : d.vertices()) {
      index[id] = static_cast<int>(ids.size());
      ids.push_back(id);
      std::string l = to_string(v.kind);
      if (v.is_point()) l += ":" + std::to_string(v.point_index);
      if (v.is_box())
        l += ":" + v.box_name + ":" + to_string(v.variant) + ":" + std::to_string(v.box_inputs) +
             ":" + std::to_string(v.box_outputs);
      l += "/" + std::to_string(d.degree(id));
      label.push_back(l);
    }
    vertex_nodes = static_cast<int>(ids.size());
    const int n_in = d.inputs();
    adj.assign(static_cast<std::size_t>(vertex_nodes + n_in + d.outputs()), {});
    auto node = [&](const Endpoint& e) {
      switch (e.side) {
        case Endpoint::Side::vertex: return index.at(e.id);
        case Endpoint::Side::input: return vertex_nodes + e.id;
        case Endpoint::Side::output: return vertex_nodes + n_in + e.id;
      }
      return -1;
    };
    // Only box ports carry an order.
    auto port_label = [&](const Endpoint& e) {
      if (e.on_vertex() && d.vertex(e.id).is_box()) return e.port;
      return -1;
    };
    for (const auto& [wid, w] : d.wires()) {
      const int a = node(w.a), b = node(w.b);
      const int la = port_label(w.a), lb = port_label(w.b);
      adj[static_cast<std::size_t>(a)].push_back({b, la, lb});
      adj[static_cast<std::size_t>(b)].push_back({a, lb, la});
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
  }
};

}  // namespace detail

/// Equality of diagrams as graphs: a kind- and box-port-preserving bijection
/// of vertices fixing every boundary position. Scalars are compared only
/// when `compare_scalar` is set.
inline bool iso_eq(const Diagram& d1, const Diagram& d2, bool compare_scalar = false) {
  if (d1.inputs() != d2.inputs() || d1.outputs() != d2.outputs()) return false;
  if (d1.vertex_count() != d2.vertex_count() || d1.wire_count() != d2.wire_count()) return false;
  if (compare_scalar && d1.scalar() != d2.scalar()) return false;

  const detail::IsoGraph g1(d1), g2(d2);
  const int n = g1.vertex_nodes;
  const int total = static_cast<int>(g1.adj.size());

  // Colour refinement; boundary nodes get unique colours.
  auto refine = [&](const detail::IsoGraph& g, std::map<std::string, int>& dict) {
    std::vector<int> colour(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
      const std::string key = i < n ? "v" + g.label[static_cast<std::size_t>(i)]
                                    : "b" + std::to_string(i - n);
      colour[static_cast<std::size_t>(i)] = dict.try_emplace(key, static_cast<int>(dict.size())).first->second;
    }
    return colour;
  };
  std::map<std::string, int> dict;
  std::vector<int> c1 = refine(g1, dict), c2 = refine(g2, dict);
  for (int round = 0; round < n + 1; ++round) {
    std::map<std::vector<int>, int> next_dict;
    auto step = [&](const detail::IsoGraph& g, const std::vector<int>& c) {
      std::vector<int> out(c.size());
      for (int i = 0; i < total; ++i) {
        std::vector<int> sig{c[static_cast<std::size_t>(i)]};
        std::vector<std::tuple<int, int, int>> nb;
        for (const auto& e : g.adj[static_cast<std::size_t>(i)])
          nb.emplace_back(c[static_cast<std::size_t>(e.other)], e.my_label, e.other_label);
        std::sort(nb.begin(), nb.end());
        for (const auto& [x, y, z] : nb) {
          sig.push_back(x);
          sig.push_back(y);
          sig.push_back(z);
        }
        out[static_cast<std::size_t>(i)] =
            next_dict.try_emplace(sig, static_cast<int>(next_dict.size())).first->second;
      }
      return out;
    };
    auto n1 = step(g1, c1), n2 = step(g2, c2);
    auto classes = [](const std::vector<int>& c) {
      std::vector<int> s = c;
      std::sort(s.begin(), s.end());
      return std::unique(s.begin(), s.end()) - s.begin();
    };
    const bool stable = classes(n1) == classes(c1);
    c1 = std::move(n1);
    c2 = std::move(n2);
    if (stable) break;
  }
  {
    auto s1 = c1, s2 = c2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }

  // Search order: breadth first from the boundary so constraints bite early.
  std::vector<int> order;
  {
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::vector<int> queue;
    auto drain = [&] {
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto& e : g1.adj[static_cast<std::size_t>(queue[h])])
          if (!seen[static_cast<std::size_t>(e.other)]) {
            seen[static_cast<std::size_t>(e.other)] = 1;
            queue.push_back(e.other);
            order.push_back(e.other);
          }
      queue.clear();
    };
    for (int i = n; i < total; ++i) {
      seen[static_cast<std::size_t>(i)] = 1;
      queue.push_back(i);
    }
    drain();
    for (int s = 0; s < n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = 1;
      queue.push_back(s);
      order.push_back(s);
      drain();
    }
  }

  std::vector<int> map12(static_cast<std::size_t>(total), -1), map21(static_cast<std::size_t>(total), -1);
  for (int i = n; i < total; ++i) {
    map12[static_cast<std::size_t>(i)] = i;
    map21[static_cast<std::size_t>(i)] = i;
  }

  // Edges from x to already-mapped nodes (or itself), translated by `tr`.
  auto mapped_edges = [](const detail::IsoGraph& g, int x, const std::vector<int>& tr, int self_image) {
    std::vector<detail::IsoGraph::Edge> out;
    for (const auto& e : g.adj[static_cast<std::size_t>(x)]) {
      const int o = e.other == x ? self_image : tr[static_cast<std::size_t>(e.other)];
      if (o >= 0) out.push_back({o, e.my_label, e.other_label});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto image_edges = [](const detail::IsoGraph& g, int y, const std::vector<int>& back, int self_pre) {
    std::vector<detail::IsoGraph::Edge> out;
    for (const auto& e : g.adj[static_cast<std::size_t>(y)]) {
      const int o = e.other == y ? self_pre : back[static_cast<std::size_t>(e.other)];
      if (o >= 0) out.push_back({e.other, e.my_label, e.other_label});
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return true;
    const int x = order[k];
    for (int y = 0; y < n; ++y) {
      if (map21[static_cast<std::size_t>(y)] >= 0) continue;
      if (c1[static_cast<std::size_t>(x)] != c2[static_cast<std::size_t>(y)]) continue;
      // Edges of x to mapped nodes must match edges of y to their images.
      const auto ex = mapped_edges(g1, x, map12, y);
      const auto ey = image_edges(g2, y, map21, x);
      if (ex != ey) continue;
      map12[static_cast<std::size_t>(x)] = y;
      map21[static_cast<std::size_t>(y)] = x;
      if (self(self, k + 1)) return true;
      map12[static_cast<std::size_t>(x)] = -1;
      map21[static_cast<std::size_t>(y)] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return false;

  // Boundary-to-boundary wires are not seen by the vertex search.
  for (int i = n; i < total; ++i) {
    std::vector<detail::IsoGraph::Edge> a, b;
    for (const auto& e : g1.adj[static_cast<std::size_t>(i)])
      if (e.other >= n) a.push_back(e);
    for (const auto& e : g2.adj[static_cast<std::size_t>(i)])
      if (e.other >= n) b.push_back(e);
    if (a != b) return false;
  }
  return true;
}

}  // namespace diagcalc
