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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diagcalc/cli.hpp"

namespace diagcalc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) { return (fs::path(DIAGCALC_CORPUS_DIR) / file).string(); }

// Compares stdout and the exit code with golden/cli/<name>.out, or rewrites
// the file when DIAGCALC_GOLDEN_UPDATE=1.
void expect_golden(const std::string& name, const Result& r) {
  const fs::path path = fs::path(DIAGCALC_GOLDEN_DIR) / "cli" / (name + ".out");
  const std::string text = r.out + "exit: " + std::to_string(r.code) + "\n";
  const char* update = std::getenv("DIAGCALC_GOLDEN_UPDATE");
  if (update && std::string(update) == "1") {
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << text;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in) << "missing " << path;
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(text, ss.str()) << name;
}

TEST(Cli, HelpExitsCleanly) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kPass);
  EXPECT_NE(r.out.find("check-eq"), std::string::npos);
}

TEST(Cli, UnknownOptionIsUsageError) { EXPECT_EQ(run_cli({"parse", "--bogus", "x"}).code, cli::kError); }

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run_cli({}).code, cli::kError); }

TEST(Cli, MissingFile) {
  const Result r = run_cli({"parse", "/nonexistent/file.gdq"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST(Cli, ParseErrorReportsPosition) {
  const fs::path bad = fs::temp_directory_path() / "diagcalc_cli_bad.gdq";
  std::ofstream(bad) << "def ok = H\ndef bad = H ; Z(2,1)\n";
  const Result r = run_cli({"parse", bad.string()});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find(":2:15: arity mismatch"), std::string::npos) << r.err;
  fs::remove(bad);
}

TEST(Cli, UnknownDefinition) {
  EXPECT_EQ(run_cli({"eval", corpus("cnot.gdq"), "--def", "nope"}).code, cli::kError);
}

TEST(Cli, PureEvalOfEnvironmentIsAnError) {
  EXPECT_EQ(run_cli({"eval", corpus("channels.gdq"), "--def", "channel", "--pure"}).code, cli::kError);
}

TEST(Cli, UnknownRule) {
  EXPECT_EQ(run_cli({"--rules", "R99", "normalize", corpus("cnot.gdq"), "--def", "cnot"}).code, cli::kError);
}

TEST(Cli, BudgetExhaustionFails) {
  EXPECT_EQ(run_cli({"--max-steps", "1", "normalize", corpus("channels.gdq"), "--def", "scrambler"}).code,
            cli::kFail);
}

TEST(Cli, ProveNeedsExactlyOneTarget) {
  EXPECT_EQ(run_cli({"prove"}).code, cli::kError);
  EXPECT_EQ(run_cli({"prove", "teleportation", "--all"}).code, cli::kError);
  EXPECT_EQ(run_cli({"prove", "nonsense"}).code, cli::kError);
}

TEST(Cli, EvalCnotIsScaledPermutation) {
  const Result r = run_cli({"eval", corpus("cnot.gdq"), "--def", "cnot", "--pure"});
  ASSERT_EQ(r.code, cli::kPass);
  const CMatrix m = cmatrix_from_json(json::parse(r.out));
  const CMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_TRUE(eq_up_to_scalar(m, cnot, 1e-12));
}

TEST(Cli, ProveAllIsDeterministic) {
  const Result a = run_cli({"prove", "--all"});
  const Result b = run_cli({"prove", "--all"});
  EXPECT_EQ(a.code, cli::kPass);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GoldenTraceMismatchFails) {
  // this test needs compare mode even while goldens are being refreshed
  const char* saved = std::getenv("DIAGCALC_GOLDEN_UPDATE");
  const std::string restore = saved ? saved : "";
  ::unsetenv("DIAGCALC_GOLDEN_UPDATE");
  const fs::path dir = fs::temp_directory_path() / "diagcalc_cli_golden";
  fs::remove_all(dir);
  EXPECT_EQ(run_cli({"prove", "bb84-same", "--golden", dir.string()}).code, cli::kFail);
  EXPECT_EQ(run_cli({"prove", "bb84-same", "--golden", dir.string(), "--update-golden"}).code, cli::kPass);
  EXPECT_EQ(run_cli({"prove", "bb84-same", "--golden", dir.string()}).code, cli::kPass);
  std::ofstream(dir / "bb84-same.trace.jsonl", std::ios::app) << "{}\n";
  EXPECT_EQ(run_cli({"prove", "bb84-same", "--golden", dir.string()}).code, cli::kFail);
  fs::remove_all(dir);
  if (saved) ::setenv("DIAGCALC_GOLDEN_UPDATE", restore.c_str(), 1);
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

class CliGolden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(CliGolden, MatchesGoldenOutput) {
  std::vector<std::string> args = GetParam().args;
  for (auto& a : args)
    if (a.size() > 4 && a.substr(a.size() - 4) == ".gdq") a = corpus(a);
  expect_golden(GetParam().name, run_cli(args));
}

INSTANTIATE_TEST_SUITE_P(
    Subcommands, CliGolden,
    ::testing::Values(GoldenCase{"parse_cnot", {"parse", "cnot.gdq"}},
                      GoldenCase{"parse_boxes", {"parse", "boxes.gdq"}},
                      GoldenCase{"eval_cnot_pure", {"eval", "cnot.gdq", "--def", "cnot", "--pure"}},
                      GoldenCase{"eval_channel", {"eval", "channels.gdq", "--def", "channel"}},
                      GoldenCase{"normalize_channel_twice",
                                 {"normalize", "channels.gdq", "--def", "channel-twice", "--trace"}},
                      GoldenCase{"normalize_scrambler_json",
                                 {"--format", "json", "normalize", "channels.gdq", "--def", "scrambler", "--trace"}},
                      GoldenCase{"normalize_restricted",
                                 {"--rules", "R1,R2", "normalize", "channels.gdq", "--def", "scrambler"}},
                      GoldenCase{"check_eq_idempotent",
                                 {"check-eq", "channels.gdq", "--left", "channel-twice", "--right", "channel"}},
                      GoldenCase{"check_eq_scrambler",
                                 {"check-eq", "channels.gdq", "--left", "scrambler", "--right", "reset"}},
                      GoldenCase{"check_eq_differ",
                                 {"check-eq", "channels.gdq", "--left", "zero-kept", "--right", "plus-decohered"}},
                      GoldenCase{"check_eq_exact",
                                 {"--scalar-policy", "exact", "check-eq", "channels.gdq", "--left",
                                  "measure-discard", "--right", "destructive"}},
                      GoldenCase{"check_eq_boxes",
                                 {"check-eq", "boxes.gdq", "--left", "discard-u", "--right", "discard-both"}},
                      GoldenCase{"prove_teleportation", {"prove", "teleportation"}},
                      GoldenCase{"prove_all", {"prove", "--all"}},
                      GoldenCase{"prove_all_json", {"--format", "json", "prove", "--all"}},
                      GoldenCase{"export_dot_cnot", {"export-dot", "cnot.gdq", "--def", "cnot"}}),
    [](const auto& info) { return info.param.name; });

}  // namespace
}  // namespace diagcalc
