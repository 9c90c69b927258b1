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
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagcalc/iso.hpp"
#include "diagcalc/json_io.hpp"
#include "diagcalc/rewrite.hpp"
#include "diagcalc/semantics.hpp"

namespace diagcalc {

inline const std::vector<std::string>& default_priority() {
  static const std::vector<std::string> p = {"R8",  "R2",  "R3", "R4", "R1", "R6a",
                                             "R6b", "R6c", "R7", "R9", "R10", "R5"};
  return p;
}

struct Strategy {
  std::vector<std::string> priority = default_priority();
  int budget = 1000;

  /// Keeps the priority order but only the rules named in `selectors`.
  Strategy restricted_to(const std::vector<std::string>& selectors) const {
    std::vector<std::string> keep;
    const auto chosen = select_rules(selectors);
    for (const auto& id : priority)
      for (const Rule* r : chosen)
        if (r->id == rule(id).id) {
          keep.push_back(id);
          break;
        }
    Strategy s = *this;
    s.priority = std::move(keep);
    return s;
  }
};

struct TraceStep {
  std::string rule;
  std::vector<int> key;
  std::string hash;  // of the diagram after the step
};

struct Trace {
  Diagram initial;
  std::vector<TraceStep> steps;
  Diagram final;
  bool budget_exhausted = false;

  std::size_t step_count() const { return steps.size(); }
};

struct NormalizeResult {
  Diagram diagram;
  Trace trace;
};

/// Applies the first match of the highest-priority applicable rule until no
/// rule matches or the budget runs out.
inline NormalizeResult normalize(const Diagram& d, const Strategy& s = {},
                                 const BoxRegistry* registry = nullptr) {
  if (s.budget < 1) throw std::invalid_argument("strategy budget must be at least 1");
  std::vector<const Rule*> rules;
  for (const auto& id : s.priority) rules.push_back(&rule(id));

  Trace t;
  t.initial = d;
  Diagram cur = d;
  while (true) {
    const Rule* fired = nullptr;
    std::optional<Match> m;
    for (const Rule* r : rules) {
      auto ms = find_matches(*r, cur, registry);
      if (ms.empty()) continue;
      fired = r;
      m = std::move(ms.front());
      break;
    }
    if (!fired) break;
    if (static_cast<int>(t.steps.size()) >= s.budget) {
      t.budget_exhausted = true;
      break;
    }
    cur = apply(*fired, *m, cur, registry);
    t.steps.push_back({fired->id, m->key, diagram_hash(cur)});
  }
  t.final = cur;
  return {cur, std::move(t)};
}

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Re-applies every step of `t` to its initial diagram, checking each hash.
inline Diagram replay(const Trace& t, const BoxRegistry* registry = nullptr) {
  Diagram cur = t.initial;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& step = t.steps[k];
    const Rule& r = rule(step.rule);
    const auto ms = find_matches(r, cur, registry);
    auto it = std::find_if(ms.begin(), ms.end(), [&](const Match& m) { return m.key == step.key; });
    if (it == ms.end()) throw ReplayError("step " + std::to_string(k) + ": no " + step.rule + " match with the recorded key");
    cur = apply(r, *it, cur, registry);
    if (diagram_hash(cur) != step.hash) throw ReplayError("step " + std::to_string(k) + ": hash mismatch");
  }
  return cur;
}

/// One JSON object per line, one line per rule application.
inline std::string trace_to_jsonl(const Trace& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    json j = {{"step", k + 1}, {"rule", s.rule}, {"name", rule(s.rule).name}, {"key", s.key}, {"hash", s.hash}};
    os << j.dump() << '\n';
  }
  return os.str();
}

inline json trace_to_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back({{"rule", s.rule}, {"key", s.key}, {"hash", s.hash}});
  return {{"initial", to_json(t.initial)},
          {"steps", steps},
          {"final", to_json(t.final)},
          {"step_count", t.step_count()},
          {"budget_exhausted", t.budget_exhausted}};
}

enum class ScalarPolicy { ray, exact };

struct Report {
  bool iso = false;
  Trace left;
  Trace right;
  /// Positive c with eval_cpm(left) = c * eval_cpm(right), if any.
  std::optional<double> oracle_scalar;
  std::string oracle_error;
  ScalarPolicy policy = ScalarPolicy::ray;
  double tol = 1e-9;

  bool oracle_ok() const {
    if (!oracle_scalar) return false;
    return policy == ScalarPolicy::ray || std::abs(*oracle_scalar - 1.0) <= tol;
  }
  bool pass() const { return iso && oracle_ok(); }
};

class ProveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalizes both sides (concurrently), compares the normal forms as graphs
/// and cross-checks the original diagrams with the CPM oracle.
inline Report prove_equal(const Diagram& d1, const Diagram& d2, const Strategy& s = {},
                          const BoxRegistry* registry = nullptr, double tol = 1e-9,
                          ScalarPolicy policy = ScalarPolicy::ray) {
  if (d1.inputs() != d2.inputs() || d1.outputs() != d2.outputs())
    throw ProveError("boundary arities differ: " + std::to_string(d1.inputs()) + "->" +
                     std::to_string(d1.outputs()) + " vs " + std::to_string(d2.inputs()) + "->" +
                     std::to_string(d2.outputs()));
  auto right = std::async(std::launch::async, [&] { return normalize(d2, s, registry); });
  auto left = normalize(d1, s, registry);
  auto r = right.get();

  Report rep;
  rep.policy = policy;
  rep.tol = tol;
  rep.iso = iso_eq(left.diagram, r.diagram, policy == ScalarPolicy::exact);
  rep.left = std::move(left.trace);
  rep.right = std::move(r.trace);
  try {
    rep.oracle_scalar = eq_up_to_scalar(eval_cpm(d1, registry), eval_cpm(d2, registry), tol);
    if (!rep.oracle_scalar) rep.oracle_error = "semantics differ";
  } catch (const std::exception& e) {
    rep.oracle_error = e.what();
  }
  return rep;
}

}  // namespace diagcalc
