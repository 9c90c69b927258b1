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

#include <tuple>

#include "diagcalc/diagcalc.hpp"
#include "support/random_diagrams.hpp"

namespace diagcalc {
namespace {

std::size_t count_matches(const std::string& id, const Diagram& d, const BoxRegistry* reg = nullptr) {
  return find_matches(rule(id), d, reg).size();
}

Diagram apply_first(const std::string& id, const Diagram& d, const BoxRegistry* reg = nullptr) {
  const auto ms = find_matches(rule(id), d, reg);
  EXPECT_FALSE(ms.empty()) << id;
  return apply(rule(id), ms.front(), d, reg);
}

TEST(Rewrite, CatalogNamesAndIds) {
  EXPECT_EQ(rule_catalog().size(), 12u);
  EXPECT_EQ(rule("spider-fusion").id, "R1");
  EXPECT_EQ(rule("R10").name, "complementary-channel-disconnect");
  EXPECT_THROW(rule("R11"), UnknownRuleError);
  EXPECT_EQ(select_rules({"R6"}).size(), 3u);
}

TEST(Rewrite, SoundnessClasses) {
  for (const char* id : {"R1", "R2", "R3", "R4"}) EXPECT_EQ(rule(id).soundness, SoundnessClass::axiom);
  for (const char* id : {"R5", "R6a", "R6b", "R7", "R8", "R9", "R10"})
    EXPECT_EQ(rule(id).soundness, SoundnessClass::derived);
  EXPECT_EQ(rule("R6c").soundness, SoundnessClass::box_flag_conditional);
}

TEST(Rewrite, FusionMatchCounts) {
  EXPECT_EQ(count_matches("R1", compose_seq(gen::spider(1, 1), gen::spider(1, 1))), 1u);
  EXPECT_EQ(count_matches("R1", gen::identity(1)), 0u);
}

TEST(Rewrite, OverlappingHadamardMatches) {
  const Diagram hhh = seq_all({gen::hadamard(), gen::hadamard(), gen::hadamard()});
  EXPECT_EQ(count_matches("R4", hhh), 2u);
}

TEST(Rewrite, FusionOfDoublyConnectedSpidersLeavesSelfLoop) {
  const Diagram d = compose_seq(gen::spider(1, 2), gen::spider(2, 1));
  const Diagram r = apply_first("R1", d);
  ASSERT_EQ(r.vertex_count(), 1u);
  EXPECT_EQ(r.degree(r.vertices().begin()->first), 4);
  EXPECT_EQ(count_matches("R2", r), 1u);
  const Diagram clean = apply_first("R2", r);
  EXPECT_TRUE(iso_eq(clean, gen::spider(1, 1)));
}

TEST(Rewrite, IdentitySpiderBecomesWire) {
  const Diagram r = apply_first("R3", gen::spider(1, 1));
  EXPECT_TRUE(iso_eq(r, gen::identity(1)));
}

TEST(Rewrite, HadamardPairCancels) {
  const Diagram r = apply_first("R4", compose_seq(gen::hadamard(), gen::hadamard()));
  EXPECT_TRUE(iso_eq(r, gen::identity(1)));
}

TEST(Rewrite, IdentitySpiderWithSelfLoopDoesNotMatch) {
  Diagram d;
  const VertexId s = d.add_vertex(Vertex::spider());
  d.link(s, s);
  EXPECT_EQ(count_matches("R3", d), 0u);
  EXPECT_EQ(count_matches("R2", d), 1u);
}

TEST(Rewrite, HopfDisconnects) {
  // Two spiders joined by two Hadamard paths.
  Diagram d(1, 1);
  const VertexId u = d.add_vertex(Vertex::spider()), v = d.add_vertex(Vertex::spider());
  d.link(Endpoint::in(0), u);
  d.link(v, Endpoint::out(0));
  for (int k = 0; k < 2; ++k) {
    const VertexId h = d.add_vertex(Vertex::hadamard());
    d.link(u, h);
    d.link(h, v);
  }
  const Diagram r = apply_first("R5", d);
  EXPECT_EQ(r.count(VertexKind::hadamard), 0u);
  EXPECT_EQ(r.count(VertexKind::spider), 2u);
  EXPECT_EQ(r.scalar().half_exponent(), -2);
  EXPECT_DOUBLE_EQ(*eq_up_to_scalar(eval_cpm(r), eval_cpm(d)), 1.0);
}

TEST(Rewrite, GroundIsometryNeedsTheFlag) {
  const BoxRegistry& reg = default_registry();
  const Diagram discard_u = compose_seq(gen::box("U", 2, 2), compose_tensor(gen::ground(), gen::ground()));
  const Diagram discard_v = compose_seq(gen::box("V", 1, 2), compose_tensor(gen::ground(), gen::ground()));
  const Diagram discard_vd = compose_seq(dagger(gen::box("V", 1, 2)), gen::ground());
  EXPECT_EQ(count_matches("R6c", discard_u, &reg), 1u);
  EXPECT_EQ(count_matches("R6c", discard_v, &reg), 1u);
  EXPECT_EQ(count_matches("R6c", discard_vd, &reg), 0u);
  EXPECT_TRUE(iso_eq(apply_first("R6c", discard_v, &reg), gen::ground()));

  BoxRegistry plain;
  plain.add({"U", 2, 2, {}, std::nullopt});
  EXPECT_EQ(count_matches("R6c", discard_u, &plain), 0u);
}

TEST(Rewrite, PointIsCopied) {
  const Diagram d = compose_seq(gen::point(1), gen::spider(1, 3));
  const Diagram r = apply_first("R7", d);
  EXPECT_TRUE(iso_eq(r, tensor_all({gen::point(1), gen::point(1), gen::point(1)})));
}

TEST(Rewrite, DiscardedPointVanishes) {
  const Diagram r = apply_first("R8", compose_seq(gen::point(0), gen::ground()));
  EXPECT_TRUE(iso_eq(r, gen::empty(), true));
}

TEST(Rewrite, UnbiasedPointIsMaximallyMixed) {
  const Diagram d = seq_all({gen::point(0), gen::hadamard(), gadget::classical_channel()});
  const Diagram r = apply_first("R9", d);
  EXPECT_EQ(r.count(VertexKind::point), 0u);
  EXPECT_EQ(r.count(VertexKind::hadamard), 0u);
  // the leftover decohering spider has degree 2 and goes with R3
  EXPECT_TRUE(iso_eq(normalize(r).diagram, gen::mix()));
  EXPECT_DOUBLE_EQ(*eq_up_to_scalar(eval_cpm(r), eval_cpm(d)), 1.0);
}

TEST(Rewrite, ComplementaryChannelsDisconnect) {
  const Diagram c = gadget::classical_channel();
  const Diagram d = seq_all({c, gen::hadamard(), c});
  const Diagram r = apply_first("R10", d);
  EXPECT_EQ(r.count(VertexKind::hadamard), 0u);
  EXPECT_TRUE(iso_eq(normalize(r).diagram, compose_seq(gen::ground(), gen::mix())));
  EXPECT_NEAR(*eq_up_to_scalar(eval_cpm(r), eval_cpm(d)), 1.0, 1e-12);
}

TEST(Rewrite, StaleMatchIsRejected) {
  const Diagram hhh = seq_all({gen::hadamard(), gen::hadamard(), gen::hadamard()});
  const auto ms = find_matches(rule("R4"), hhh);
  ASSERT_EQ(ms.size(), 2u);
  const Diagram once = apply(rule("R4"), ms[0], hhh);
  EXPECT_THROW(apply(rule("R4"), ms[1], once), StaleMatchError);
  EXPECT_THROW(apply(rule("R1"), ms[0], hhh), StaleMatchError);
}

TEST(Rewrite, MatchesAreSortedAndUnique) {
  testing::Rng rng(31);
  for (const auto& r : rule_catalog()) {
    for (int k = 0; k < 20; ++k) {
      const Diagram d = testing::random_host(r.id, rng);
      const auto ms = find_matches(r, d, &default_registry());
      for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_LT(ms[i - 1].key, ms[i].key) << r.id;
      for (const auto& m : ms) EXPECT_EQ(m.key.front(), *std::min_element(m.vertices.begin(), m.vertices.end()));
    }
  }
}

// Each rule, applied anywhere in random hosts, preserves the semantics
// exactly once the scalar delta is applied.
class RuleSoundness : public ::testing::TestWithParam<std::string> {};

TEST_P(RuleSoundness, RandomHosts) {
  const Rule& r = rule(GetParam());
  const BoxRegistry* reg = &default_registry();
  testing::Rng rng(std::hash<std::string>{}(r.id));
  for (int k = 0; k < 120; ++k) {
    const Diagram d = testing::random_host(r.id, rng);
    const auto ms = find_matches(r, d, reg);
    ASSERT_FALSE(ms.empty());
    const Match& m = ms[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(ms.size()) - 1))];
    const Diagram out = apply(r, m, d, reg);
    ASSERT_TRUE(is_valid(out, reg)) << to_json(d).dump();
    EXPECT_EQ(out.inputs(), d.inputs());
    EXPECT_EQ(out.outputs(), d.outputs());
    const auto c = eq_up_to_scalar(eval_cpm(out, reg), eval_cpm(d, reg), 1e-9);
    ASSERT_TRUE(c.has_value()) << to_json(d).dump();
    EXPECT_NEAR(*c, 1.0, 1e-9) << to_json(d).dump();
  }
}

TEST_P(RuleSoundness, MeasureDecreases) {
  const Rule& r = rule(GetParam());
  const BoxRegistry* reg = &default_registry();
  testing::Rng rng(std::hash<std::string>{}(r.id) + 1);
  for (int k = 0; k < 50; ++k) {
    const Diagram d = testing::random_host(r.id, rng);
    const Diagram out = apply(r, find_matches(r, d, reg).front(), d, reg);
    if (r.id == "R7") {
      EXPECT_LT(out.count(VertexKind::spider), d.count(VertexKind::spider));
      continue;
    }
    auto measure = [](const Diagram& x) {
      return std::make_tuple(x.vertex_count(), x.wire_count(), x.count(VertexKind::hadamard));
    };
    EXPECT_LT(measure(out), measure(d)) << r.id << " " << to_json(d).dump();
  }
}

INSTANTIATE_TEST_SUITE_P(AllRules, RuleSoundness,
                         ::testing::Values("R1", "R2", "R3", "R4", "R5", "R6a", "R6b", "R6c", "R7", "R8", "R9",
                                           "R10"));

}  // namespace
}  // namespace diagcalc
