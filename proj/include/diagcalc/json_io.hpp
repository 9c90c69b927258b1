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
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagcalc/cmatrix.hpp"
#include "diagcalc/diagram.hpp"

namespace diagcalc {

using json = nlohmann::json;

class JsonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline json endpoint_to_json(const Endpoint& e) {
  switch (e.side) {
    case Endpoint::Side::vertex: return {{"v", e.id}, {"p", e.port}};
    case Endpoint::Side::input: return {{"b", "in"}, {"i", e.id}};
    case Endpoint::Side::output: return {{"b", "out"}, {"i", e.id}};
  }
  return {};
}

inline Endpoint endpoint_from_json(const json& j) {
  if (j.contains("v")) return Endpoint::at(j.at("v").get<int>(), j.value("p", 0));
  const auto side = j.at("b").get<std::string>();
  const int i = j.at("i").get<int>();
  if (side == "in") return Endpoint::in(i);
  if (side == "out") return Endpoint::out(i);
  throw JsonError("unknown boundary side '" + side + "'");
}

inline BoxVariant variant_from_string(const std::string& s) {
  if (s == "plain") return BoxVariant::plain;
  if (s == "dagger") return BoxVariant::dagger;
  if (s == "conjugate") return BoxVariant::conjugate;
  if (s == "dagger-conjugate") return BoxVariant::dagger_conjugate;
  throw JsonError("unknown box variant '" + s + "'");
}

}  // namespace detail

inline json to_json(const Diagram& d) {
  json j;
  j["inputs"] = d.inputs();
  j["outputs"] = d.outputs();
  json vs = json::array();
  for (const auto& [id, v] : d.vertices()) {
    json params = json::object();
    if (v.is_point()) params["index"] = v.point_index;
    if (v.is_box()) {
      params["name"] = v.box_name;
      params["variant"] = to_string(v.variant);
      params["inputs"] = v.box_inputs;
      params["outputs"] = v.box_outputs;
    }
    vs.push_back({{"id", id}, {"kind", to_string(v.kind)}, {"params", params}});
  }
  j["vertices"] = vs;
  json ws = json::array();
  json classical = json::array();
  for (const auto& [id, w] : d.wires()) {
    if (w.classical) classical.push_back(ws.size());
    ws.push_back(json::array({detail::endpoint_to_json(w.a), detail::endpoint_to_json(w.b)}));
  }
  j["wires"] = ws;
  j["scalar"] = {{"pow2", d.scalar().pow2()}, {"powsqrt2", d.scalar().powsqrt2()}};
  if (!classical.empty()) j["display"] = {{"classical_wires", classical}};
  return j;
}

inline Diagram diagram_from_json(const json& j) {
  try {
    Diagram d(j.at("inputs").get<int>(), j.at("outputs").get<int>());
    for (const auto& v : j.at("vertices")) {
      const int id = v.at("id").get<int>();
      const auto kind = v.at("kind").get<std::string>();
      const json params = v.value("params", json::object());
      if (kind == "spider") d.insert_vertex(id, Vertex::spider());
      else if (kind == "hadamard") d.insert_vertex(id, Vertex::hadamard());
      else if (kind == "environment") d.insert_vertex(id, Vertex::environment());
      else if (kind == "point") d.insert_vertex(id, Vertex::point(params.at("index").get<int>()));
      else if (kind == "box")
        d.insert_vertex(id, Vertex::box(params.at("name").get<std::string>(),
                                        params.at("inputs").get<int>(),
                                        params.at("outputs").get<int>(),
                                        detail::variant_from_string(params.value("variant", "plain"))));
      else throw JsonError("unknown vertex kind '" + kind + "'");
    }
    std::vector<int> classical;
    if (j.contains("display")) classical = j.at("display").value("classical_wires", std::vector<int>{});
    int index = 0;
    for (const auto& w : j.at("wires")) {
      const bool c = std::find(classical.begin(), classical.end(), index) != classical.end();
      d.insert_wire(index, detail::endpoint_from_json(w.at(0)), detail::endpoint_from_json(w.at(1)), c);
      ++index;
    }
    if (j.contains("scalar"))
      d.set_scalar(Scalar(j.at("scalar").value("pow2", 0), j.at("scalar").value("powsqrt2", 0)));
    return d;
  } catch (const json::exception& e) {
    throw JsonError(std::string("malformed diagram JSON: ") + e.what());
  }
}

inline json to_json(const CMatrix& m) {
  std::vector<double> re, im;
  re.reserve(m.data().size());
  im.reserve(m.data().size());
  for (const auto& x : m.data()) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline CMatrix cmatrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols)
      throw JsonError("matrix entry count does not match shape");
    std::vector<cd> data(rows * cols);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
    return CMatrix(rows, cols, std::move(data));
  } catch (const json::exception& e) {
    throw JsonError(std::string("malformed matrix JSON: ") + e.what());
  }
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stable content hash of a diagram, as 16 hex digits.
inline std::string diagram_hash(const Diagram& d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(d).dump())));
  return buf;
}

}  // namespace diagcalc
