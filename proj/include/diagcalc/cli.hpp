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

// Command-line front end. Exit codes: 0 success or pass, 1 a check failed,
// 2 usage, input or evaluation error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diagcalc/dot.hpp"
#include "diagcalc/dsl.hpp"
#include "diagcalc/json_io.hpp"
#include "diagcalc/protocols.hpp"
#include "diagcalc/semantics.hpp"
#include "diagcalc/strategy.hpp"

namespace diagcalc::cli {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

struct Config {
  double tol = 1e-9;
  int max_steps = 1000;
  std::string rules;
  std::string scalar_policy = "ray";
  std::string format = "text";

  Strategy strategy() const {
    Strategy s;
    s.budget = max_steps;
    if (!rules.empty()) {
      std::vector<std::string> sel;
      std::stringstream ss(rules);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) sel.push_back(item);
      s = s.restricted_to(sel);
    }
    return s;
  }
  ScalarPolicy policy() const { return scalar_policy == "exact" ? ScalarPolicy::exact : ScalarPolicy::ray; }
  bool json() const { return format == "json"; }
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load(const std::string& path) { return parse(read_file(path)); }

inline const Definition& lookup(const Program& p, const std::string& name) {
  const Definition* d = p.find(name);
  if (!d) throw InputError("no definition named '" + name + "'");
  return *d;
}

inline json trace_steps_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"rule", s.rule}, {"name", rule(s.rule).name}, {"key", s.key}, {"hash", s.hash}});
  return steps;
}

inline json report_json(const Report& r) {
  json j;
  j["pass"] = r.pass();
  j["iso"] = r.iso;
  j["oracle_scalar"] = r.oracle_scalar ? json(*r.oracle_scalar) : json(nullptr);
  if (!r.oracle_error.empty()) j["oracle_error"] = r.oracle_error;
  j["left"] = {{"steps", r.left.step_count()},
               {"budget_exhausted", r.left.budget_exhausted},
               {"trace", trace_steps_json(r.left)},
               {"final", to_json(r.left.final)}};
  j["right"] = {{"steps", r.right.step_count()},
                {"budget_exhausted", r.right.budget_exhausted},
                {"trace", trace_steps_json(r.right)},
                {"final", to_json(r.right.final)}};
  return j;
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline void print_trace_text(std::ostream& out, const Trace& t, const std::string& indent) {
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& s = t.steps[k];
    out << indent << k + 1 << ". " << s.rule << " " << rule(s.rule).name << " key=[";
    for (std::size_t i = 0; i < s.key.size(); ++i) out << (i ? "," : "") << s.key[i];
    out << "] " << s.hash << "\n";
  }
}

inline std::string case_text(const CaseReport& r) {
  std::ostringstream os;
  os << (r.pass() ? "PASS " : "FAIL ") << r.name << " (" << r.title << ")\n";
  os << "  normal form iso: " << (r.report.iso ? "yes" : "no") << ", steps: " << r.report.left.step_count()
     << (r.report.left.budget_exhausted ? " (budget exhausted)" : "") << "\n";
  os << "  oracle scalar: ";
  if (r.report.oracle_scalar) os << fmt(*r.report.oracle_scalar);
  else os << "none (" << r.report.oracle_error << ")";
  os << "\n";
  if (r.outcome)
    os << "  outcome: " << to_string(*r.outcome) << " " << (r.outcome_met ? "met" : "NOT met") << "\n";
  print_trace_text(os, r.report.left, "  ");
  return os.str();
}

inline json case_json(const CaseReport& r) {
  json j = report_json(r.report);
  j["name"] = r.name;
  j["title"] = r.title;
  j["pass"] = r.pass();
  j["outcome"] = r.outcome ? json(to_string(*r.outcome)) : json(nullptr);
  j["outcome_met"] = r.outcome_met;
  return j;
}

/// Compares (or, when updating, rewrites) the golden trace of one case.
inline bool golden_check(const std::string& dir, const CaseReport& r, bool update, std::ostream& err) {
  const auto path = std::filesystem::path(dir) / (r.name + ".trace.jsonl");
  const std::string text = trace_to_jsonl(r.report.left);
  if (update) {
    std::filesystem::create_directories(dir);
    std::ofstream(path, std::ios::binary) << text;
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "missing golden trace " << path.string() << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (ss.str() != text) {
    err << "golden trace mismatch for " << r.name << "\n";
    return false;
  }
  return true;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagrammatic calculus for quantum protocols", "diagcalc"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--tol", cfg.tol, "Comparison tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.max_steps, "Rewrite step budget")->check(CLI::Range(1, 1000000));
  app.add_option("--rules", cfg.rules, "Comma-separated rule ids or names to enable (R6 means R6a,R6b,R6c)");
  app.add_option("--scalar-policy", cfg.scalar_policy, "ray: equal up to a positive scalar; exact: scalar 1")
      ->check(CLI::IsMember({"ray", "exact"}));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, def, left, right, name, golden_dir;
  bool pure = false, with_trace = false, all = false, update_golden = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and validate a program; print it as JSON");
  parse_cmd->add_option("file", file, "Program file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Print the matrix of a definition as JSON");
  eval_cmd->add_option("file", file, "Program file")->required();
  eval_cmd->add_option("--def", def, "Definition name")->required();
  eval_cmd->add_flag("--pure", pure, "Pure semantics instead of the completely positive map");

  auto* norm_cmd = app.add_subcommand("normalize", "Rewrite a definition to normal form");
  norm_cmd->add_option("file", file, "Program file")->required();
  norm_cmd->add_option("--def", def, "Definition name")->required();
  norm_cmd->add_flag("--trace", with_trace, "Print every rule application");

  auto* eq_cmd = app.add_subcommand("check-eq", "Check two definitions for equality");
  eq_cmd->add_option("file", file, "Program file")->required();
  eq_cmd->add_option("--left", left, "Left definition")->required();
  eq_cmd->add_option("--right", right, "Right definition")->required();

  auto* prove_cmd = app.add_subcommand("prove", "Verify a built-in protocol case");
  prove_cmd->add_option("name", name, "Case name");
  prove_cmd->add_flag("--all", all, "Verify every protocol case");
  prove_cmd->add_option("--golden", golden_dir, "Compare traces with DIR/<name>.trace.jsonl");
  prove_cmd->add_flag("--update-golden", update_golden, "Rewrite the golden traces instead of comparing");

  auto* dot_cmd = app.add_subcommand("export-dot", "Print a definition as a Graphviz graph");
  dot_cmd->add_option("file", file, "Program file")->required();
  dot_cmd->add_option("--def", def, "Definition name")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kError;
  }

  try {
    if (*parse_cmd) {
      const Program p = detail::load(file);
      json j;
      j["declarations"] = json::array();
      for (const auto& d : p.declarations())
        j["declarations"].push_back({{"name", d.name},
                                     {"inputs", d.in_arity},
                                     {"outputs", d.out_arity},
                                     {"isometry", d.flags.isometry},
                                     {"unitary", d.flags.unitary},
                                     {"normalized_state", d.flags.normalized_state}});
      j["definitions"] = json::array();
      for (const auto& d : p.definitions())
        j["definitions"].push_back({{"name", d.name}, {"diagram", to_json(d.diagram)}});
      out << j.dump(2) << "\n";
      return kPass;
    }

    if (*eval_cmd) {
      const Program p = detail::load(file);
      const auto& d = detail::lookup(p, def);
      const CMatrix m = pure ? eval_pure(d.diagram, &p.registry()) : eval_cpm(d.diagram, &p.registry());
      out << to_json(m).dump() << "\n";
      return kPass;
    }

    if (*norm_cmd) {
      const Program p = detail::load(file);
      const auto& d = detail::lookup(p, def);
      const auto r = normalize(d.diagram, cfg.strategy(), &p.registry());
      if (cfg.json()) {
        json j = {{"steps", r.trace.step_count()},
                  {"budget_exhausted", r.trace.budget_exhausted},
                  {"final", to_json(r.diagram)}};
        if (with_trace) j["trace"] = detail::trace_steps_json(r.trace);
        out << j.dump(2) << "\n";
      } else {
        out << "steps: " << r.trace.step_count() << (r.trace.budget_exhausted ? " (budget exhausted)" : "") << "\n";
        if (with_trace) detail::print_trace_text(out, r.trace, "  ");
        out << "scalar: " << r.diagram.scalar().to_string() << "\n";
        std::string text;
        try {
          text = to_text(unparse(r.diagram));
        } catch (const UnparseError&) {
          text = to_json(r.diagram).dump();
        }
        out << "normal form: " << text << "\n";
      }
      return r.trace.budget_exhausted ? kFail : kPass;
    }

    if (*eq_cmd) {
      const Program p = detail::load(file);
      const auto& a = detail::lookup(p, left);
      const auto& b = detail::lookup(p, right);
      const Report r = prove_equal(a.diagram, b.diagram, cfg.strategy(), &p.registry(), cfg.tol, cfg.policy());
      std::optional<double> diff;
      if (!r.oracle_scalar && r.oracle_error == "semantics differ") {
        const CMatrix ma = eval_cpm(a.diagram, &p.registry()), mb = eval_cpm(b.diagram, &p.registry());
        if (ma.max_abs() > 0 && mb.max_abs() > 0)
          diff = (ma * cd{1.0 / ma.max_abs(), 0}).max_abs_diff(mb * cd{1.0 / mb.max_abs(), 0});
      }
      if (cfg.json()) {
        json j = detail::report_json(r);
        if (diff) j["oracle_max_normalized_diff"] = *diff;
        out << j.dump(2) << "\n";
      } else {
        out << (r.pass() ? "PASS" : "FAIL") << " " << left << " = " << right << "\n";
        out << "  normal form iso: " << (r.iso ? "yes" : "no") << " (steps " << r.left.step_count() << " / "
            << r.right.step_count() << ")\n";
        out << "  oracle: ";
        if (r.oracle_scalar) out << "equal up to scalar " << detail::fmt(*r.oracle_scalar) << "\n";
        else if (diff) out << "differ, max normalized entry difference " << detail::fmt(*diff) << "\n";
        else out << r.oracle_error << "\n";
      }
      return r.pass() ? kPass : kFail;
    }

    if (*prove_cmd) {
      if (all == !name.empty()) {
        err << "prove: give either a case name or --all\n";
        return kError;
      }
      const std::vector<std::string> names = all ? protocol_names() : std::vector<std::string>{name};
      const Strategy s = cfg.strategy();
      std::vector<std::future<CaseReport>> jobs;
      for (const auto& n : names) {
        build(n);  // surface unknown names before spawning work
        jobs.push_back(std::async(std::launch::async, [&, n] { return verify(n, s, cfg.tol, cfg.policy()); }));
      }
      const char* env = std::getenv("DIAGCALC_GOLDEN_UPDATE");
      const bool update = update_golden || (env && std::string(env) == "1");
      bool ok = true;
      json arr = json::array();
      int passed = 0;
      for (auto& job : jobs) {
        const CaseReport r = job.get();
        bool case_ok = r.pass();
        if (!golden_dir.empty()) case_ok = detail::golden_check(golden_dir, r, update, err) && case_ok;
        ok = ok && case_ok;
        passed += case_ok;
        if (cfg.json()) arr.push_back(detail::case_json(r));
        else out << detail::case_text(r);
      }
      if (cfg.json()) out << (all ? arr.dump(2) : arr.at(0).dump(2)) << "\n";
      else if (all) out << passed << "/" << names.size() << " cases passed\n";
      return ok ? kPass : kFail;
    }

    if (*dot_cmd) {
      const Program p = detail::load(file);
      out << export_dot(detail::lookup(p, def).diagram);
      return kPass;
    }
  } catch (const ParseError& e) {
    err << file << ":" << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace diagcalc::cli
