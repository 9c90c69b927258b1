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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "diagcalc/diagcalc.hpp"
#include "support/random_diagrams.hpp"

namespace diagcalc {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError(ParseError::Kind::syntax, 0, 0, "");
}

void expect_round_trip(const Program& p) {
  const Program q = parse(print(p));
  ASSERT_EQ(q.definitions().size(), p.definitions().size());
  for (std::size_t k = 0; k < p.definitions().size(); ++k) {
    EXPECT_EQ(q.definitions()[k].name, p.definitions()[k].name);
    // The unparser drops scalar tags; source text keeps them.
    const bool scalars = p.definitions()[k].ast.has_value();
    EXPECT_TRUE(iso_eq(q.definitions()[k].diagram, p.definitions()[k].diagram, scalars)) << p.definitions()[k].name;
  }
}

// Same program with every definition kept only as a diagram, so printing
// goes through the unparser.
Program strip_syntax(const Program& p) {
  Program q;
  for (const auto& d : p.declarations()) q.declare(d);
  for (const auto& d : p.definitions()) q.define(d.name, d.diagram);
  return q;
}

TEST(Dsl, ParsesSpider) {
  const Program p = parse("def d = Z(1,2)");
  ASSERT_EQ(p.definitions().size(), 1u);
  EXPECT_EQ(p.definitions()[0].diagram.inputs(), 1);
  EXPECT_EQ(p.definitions()[0].diagram.outputs(), 2);
}

TEST(Dsl, ParsesDeclaredBox) {
  const Program p = parse("declare box U : 2 -> 2 [unitary]\ndef m = (U ; ground*ground)");
  const Diagram& m = p.find("m")->diagram;
  EXPECT_EQ(m.inputs(), 2);
  EXPECT_EQ(m.outputs(), 0);
  EXPECT_TRUE(is_valid(m, &p.registry()));
  EXPECT_TRUE(p.registry().find("U")->flags.isometry);
}

TEST(Dsl, ArityMismatch) {
  const ParseError e = parse_error("def bad = H ; Z(2,1)");
  EXPECT_EQ(e.kind(), ParseError::Kind::arity_mismatch);
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.col(), 15);
  EXPECT_NE(std::string(e.what()).find("1 != 2"), std::string::npos);
}

TEST(Dsl, SyntaxErrorPosition) {
  const ParseError e = parse_error("def a = H\ndef b = Z(1,\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::syntax);
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(std::string(e.what()).rfind("3:1:", 0), 0u);
  EXPECT_EQ(parse_error("def x = H $").col(), 11);
}

TEST(Dsl, UnknownIdentifier) {
  const ParseError e = parse_error("def a = H ; later\ndef later = H");
  EXPECT_EQ(e.kind(), ParseError::Kind::unknown_identifier);
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.col(), 13);
}

TEST(Dsl, KeywordsAreReserved) {
  EXPECT_EQ(parse_error("def H = id(1)").kind(), ParseError::Kind::syntax);
  EXPECT_EQ(parse_error("declare box cup : 0 -> 2").kind(), ParseError::Kind::syntax);
}

TEST(Dsl, DuplicateNames) {
  EXPECT_EQ(parse_error("def a = H\ndef a = H").kind(), ParseError::Kind::invalid);
  EXPECT_EQ(parse_error("declare box a : 1 -> 1\ndef a = H").kind(), ParseError::Kind::invalid);
}

TEST(Dsl, InvalidDeclarations) {
  EXPECT_EQ(parse_error("declare box S : 1 -> 1 [normalized]").kind(), ParseError::Kind::invalid);
  EXPECT_EQ(parse_error("declare box S : 2 -> 1 [isometry]").kind(), ParseError::Kind::invalid);
  EXPECT_EQ(parse_error("declare box S : 1 -> 1 [shiny]").kind(), ParseError::Kind::syntax);
  EXPECT_EQ(parse_error("def p = point(2)").kind(), ParseError::Kind::invalid);
}

TEST(Dsl, HyphenatedNamesAndComments) {
  const Program p = parse("# leading comment\ndef bell-state = Z(0,2) # trailing\ndef x = bell-state;cap");
  EXPECT_NE(p.find("bell-state"), nullptr);
  EXPECT_EQ(p.find("x")->diagram.outputs(), 0);
}

TEST(Dsl, ArrowIsNotPartOfName) {
  const Program p = parse("declare box a-b : 1 ->1");
  EXPECT_TRUE(p.registry().contains("a-b"));
}

TEST(Dsl, MixIsDaggerOfGround) {
  const Program p = parse("def a = mix\ndef b = dagger(ground)");
  EXPECT_TRUE(iso_eq(p.find("a")->diagram, p.find("b")->diagram));
  // mix is normalized, the bare co-discard is not
  EXPECT_EQ(p.find("a")->diagram.scalar().half_exponent(), -1);
  EXPECT_EQ(p.find("b")->diagram.scalar().half_exponent(), 0);
}

TEST(Dsl, SequenceIsLeftToRight) {
  const Program p = parse("def a = point(1) ; Z(1,2)");
  EXPECT_EQ(p.find("a")->diagram.outputs(), 2);
}

TEST(Dsl, CnotCorpusFile) {
  const Program p = parse(slurp(fs::path(DIAGCALC_CORPUS_DIR) / "cnot.gdq"));
  const CMatrix M = eval_pure(p.find("cnot")->diagram);
  const CMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  const auto c = eq_up_to_scalar(M, cnot, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Dsl, EmptyProgramPrintsNothing) { EXPECT_EQ(print(Program{}), ""); }

TEST(Dsl, SpiderRoundTrip) { expect_round_trip(parse("def s = Z(3,2)")); }

TEST(Dsl, CorpusRoundTrips) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(DIAGCALC_CORPUS_DIR)) {
    if (entry.path().extension() != ".gdq") continue;
    ++files;
    SCOPED_TRACE(entry.path().filename().string());
    const Program p = parse(slurp(entry.path()));
    expect_round_trip(p);
    expect_round_trip(strip_syntax(p));
  }
  EXPECT_GE(files, 4);
}

void collect(const Expr& e, std::set<Expr::Kind>& seen) {
  seen.insert(e.kind);
  for (const auto& k : e.kids) collect(k, seen);
}

TEST(Dsl, CorpusCoversTheGrammar) {
  std::set<Expr::Kind> seen;
  bool declared = false, flagged = false, comment = false;
  for (const auto& entry : fs::directory_iterator(DIAGCALC_CORPUS_DIR)) {
    if (entry.path().extension() != ".gdq") continue;
    const std::string text = slurp(entry.path());
    comment |= text.find('#') != std::string::npos;
    const Program p = parse(text);
    declared |= !p.declarations().empty();
    for (const auto& d : p.declarations()) flagged |= d.flags.isometry;
    for (const auto& d : p.definitions()) collect(*d.ast, seen);
  }
  using K = Expr::Kind;
  for (K k : {K::id, K::swap, K::spider, K::hadamard, K::ground, K::mix, K::cup, K::cap, K::point, K::dagger, K::name,
              K::seq, K::tensor})
    EXPECT_TRUE(seen.count(k)) << static_cast<int>(k);
  EXPECT_TRUE(declared);
  EXPECT_TRUE(flagged);
  EXPECT_TRUE(comment);
}

TEST(Dsl, TeleportationRoundTrip) {
  Program p;
  p.define("teleportation", build("teleportation").protocol);
  expect_round_trip(p);
}

TEST(Dsl, RandomDiagramsRoundTripThroughUnparser) {
  testing::Rng rng(51);
  testing::RandomOptions o;
  o.boxes = true;
  for (int k = 0; k < 150; ++k) {
    Diagram d = testing::random_diagram(rng, o);
    // conjugate boxes have no textual form
    bool printable = true;
    for (const auto& [id, v] : d.vertices()) printable &= !(v.is_box() && has_conjugate(v.variant));
    Program p;
    p.declare({"U", 2, 2, {false, true, false}});
    p.declare({"V", 1, 2, {true, false, false}});
    if (!printable) {
      p.define("d", d);
      EXPECT_THROW(print(p), UnparseError);
      continue;
    }
    p.define("d", d);
    expect_round_trip(p);
  }
}

TEST(Dsl, RandomProgramsRoundTrip) {
  testing::Rng rng(52);
  testing::ProgramGenerator gen(rng);
  for (int k = 0; k < 100; ++k) {
    const std::string text = gen.generate(testing::uniform(rng, 1, 4));
    SCOPED_TRACE(text);
    const Program p = parse(text);
    expect_round_trip(p);
    expect_round_trip(strip_syntax(p));
  }
}

TEST(Dot, IdentityWire) {
  const std::string dot = export_dot(gen::identity(1));
  EXPECT_NE(dot.find("in0 -- out0"), std::string::npos);
  EXPECT_NE(dot.find("rank=min"), std::string::npos);
  EXPECT_NE(dot.find("rank=max"), std::string::npos);
  EXPECT_EQ(dot.find(" v"), std::string::npos);
}

TEST(Dot, CnotShape) {
  const std::string dot = export_dot(gadget::cnot());
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("fillcolor=black"), 2u);
  EXPECT_EQ(count("label=\"H\""), 3u);
}

TEST(Dot, EmptyDiagramHasNoNodes) {
  EXPECT_EQ(export_dot(gen::empty()), "graph diagram {\n  rankdir=BT;\n}\n");
}

TEST(Dot, ClassicalWiresAreDashed) {
  EXPECT_NE(export_dot(gadget::classical_channel()).find("style=dashed"), std::string::npos);
  EXPECT_NE(export_dot(gen::ground()).find("⏚"), std::string::npos);
  EXPECT_NE(export_dot(gen::point(1)).find("shape=triangle, label=\"1\""), std::string::npos);
  EXPECT_NE(export_dot(dagger(gen::box("U", 2, 2))).find("U†"), std::string::npos);
}

}  // namespace
}  // namespace diagcalc
