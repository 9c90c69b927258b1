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

#include <sstream>
#include <string>

#include "diagcalc/diagram.hpp"

namespace diagcalc {

namespace detail {

inline std::string dot_node(const Endpoint& e) {
  switch (e.side) {
    case Endpoint::Side::vertex: return "v" + std::to_string(e.id);
    case Endpoint::Side::input: return "in" + std::to_string(e.id);
    case Endpoint::Side::output: return "out" + std::to_string(e.id);
  }
  return "?";
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering. Inputs sit on the bottom rank and outputs on the top
/// rank; wires flagged classical are dashed.
inline std::string export_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph diagram {\n";
  os << "  rankdir=BT;\n";
  if (d.inputs() > 0) {
    os << "  { rank=min;";
    for (int i = 0; i < d.inputs(); ++i) os << " in" << i << " [shape=point, label=\"\"];";
    os << " }\n";
  }
  if (d.outputs() > 0) {
    os << "  { rank=max;";
    for (int i = 0; i < d.outputs(); ++i) os << " out" << i << " [shape=point, label=\"\"];";
    os << " }\n";
  }
  for (const auto& [id, v] : d.vertices()) {
    os << "  v" << id << " [";
    switch (v.kind) {
      case VertexKind::spider:
        os << "shape=circle, style=filled, fillcolor=black, label=\"\", width=0.2";
        break;
      case VertexKind::hadamard:
        os << "shape=square, label=\"H\", width=0.25, fixedsize=true";
        break;
      case VertexKind::environment:
        os << "shape=plaintext, label=\"⏚\"";
        break;
      case VertexKind::point:
        os << "shape=triangle, label=\"" << v.point_index << "\"";
        break;
      case VertexKind::box: {
        std::string label = v.box_name;
        if (has_conjugate(v.variant)) label += "*";
        if (has_dagger(v.variant)) label += "†";
        os << "shape=box, label=\"" << detail::dot_escape(label) << "\"";
        break;
      }
    }
    os << "];\n";
  }
  for (const auto& [id, w] : d.wires()) {
    os << "  " << detail::dot_node(w.a) << " -- " << detail::dot_node(w.b);
    if (w.classical) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace diagcalc
