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

#include <cmath>

#include "diagcalc/diagcalc.hpp"

namespace diagcalc {
namespace {

using cd = std::complex<double>;

CMatrix basis_projector(int i) {
  CMatrix p(2, 2);
  p(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0;
  return p;
}

// Applies a doubled map to a density matrix.
CMatrix act(const Diagram& d, const CMatrix& rho) {
  return unvectorize(eval_cpm(d, &default_registry()) * vectorize(rho));
}

CMatrix test_state() {
  // a fixed full-rank qubit state with coherences
  return CMatrix{{0.7, cd(0.2, -0.1)}, {cd(0.2, 0.1), 0.3}};
}

class ProtocolCases : public ::testing::TestWithParam<std::string> {};

TEST_P(ProtocolCases, Verified) {
  const CaseReport r = verify(GetParam());
  EXPECT_TRUE(r.report.iso) << GetParam();
  EXPECT_TRUE(r.report.oracle_ok()) << r.report.oracle_error;
  EXPECT_TRUE(r.outcome_met);
  EXPECT_LE(r.report.left.step_count(), 200u);
  EXPECT_LE(r.report.right.step_count(), 200u);
  EXPECT_FALSE(r.report.left.budget_exhausted);
}

INSTANTIATE_TEST_SUITE_P(Seven, ProtocolCases, ::testing::ValuesIn(protocol_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

class ExtraCases : public ProtocolCases {};
TEST_P(ExtraCases, Verified) {
  const CaseReport r = verify(GetParam());
  EXPECT_TRUE(r.pass()) << GetParam() << " " << r.report.oracle_error;
}
INSTANTIATE_TEST_SUITE_P(Gadgets, ExtraCases, ::testing::ValuesIn(extra_case_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Protocols, UnknownCase) { EXPECT_THROW(build("quantum-money"), UnknownCaseError); }

TEST(Protocols, TeleportationReducesToWire) {
  const auto r = normalize(build("teleportation").protocol, {}, &default_registry());
  const auto comps = detail::boundary_components(r.diagram);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_TRUE(comps[0].vertices.empty());
}

TEST(Protocols, TeleportationTransmitsStates) {
  const Diagram t = build("teleportation").protocol;
  const CMatrix rho = test_state();
  const auto c = eq_up_to_scalar(act(t, rho), rho, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_GT(*c, 0.0);
}

TEST(Protocols, CnotMatrix) {
  const CMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  const auto c = eq_up_to_scalar(eval_pure(gadget::cnot()), cnot, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Protocols, DefaultRegistry) {
  const BoxRegistry& reg = default_registry();
  EXPECT_TRUE(reg.frozen());
  EXPECT_TRUE(reg.find("U")->flags.unitary);
  EXPECT_TRUE(reg.find("V")->flags.isometry);
  EXPECT_FALSE(reg.find("V")->flags.unitary);
}

TEST(Protocols, MeasurementCopiesTheOutcome) {
  const CMatrix rho = test_state();
  CMatrix expected(4, 4);
  for (int i = 0; i < 2; ++i) {
    const CMatrix p = basis_projector(i);
    expected = expected + (p * rho * p).kron(p);
  }
  const auto c = eq_up_to_scalar(act(gadget::measurement(), rho), expected, 1e-12);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, 1.0, 1e-12);
}

TEST(Protocols, DestructiveMeasurementGivesProbabilities) {
  const CMatrix rho = test_state();
  const CMatrix out = act(gadget::destructive_measurement(), rho);
  EXPECT_NEAR(out(0, 0).real(), 0.7, 1e-12);
  EXPECT_NEAR(out(1, 1).real(), 0.3, 1e-12);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-12);
}

TEST(Protocols, ClassicallyControlledCorrections) {
  const CMatrix Z{{1, 0}, {0, -1}}, X{{0, 1}, {1, 0}}, I = CMatrix::identity(2);
  const CMatrix rho = test_state();
  for (int i = 0; i < 2; ++i) {
    const CMatrix in = basis_projector(i).kron(rho);
    const CMatrix z = i ? Z : I, x = i ? X : I;
    const auto cz = eq_up_to_scalar(act(gadget::controlled_z(), in), basis_projector(i).kron(z * rho * z), 1e-12);
    const auto cx = eq_up_to_scalar(act(gadget::controlled_x(), in), basis_projector(i).kron(x * rho * x), 1e-12);
    EXPECT_TRUE(cz && *cz > 0) << i;
    EXPECT_TRUE(cx && *cx > 0) << i;
  }
}

TEST(Protocols, BellMeasurementOfBellState) {
  // Measuring the Bell state in the Bell basis always yields outcome 00.
  const Diagram d = compose_seq(gadget::bell_state(), gadget::bell_measurement());
  const auto c = eq_up_to_scalar(eval_cpm(d), eval_cpm(compose_tensor(gen::point(0), gen::point(0))), 1e-12);
  ASSERT_TRUE(c);
  EXPECT_GT(*c, 0.0);
}

TEST(Protocols, BellMeasurementOutcomesAreUniformOnProductInputs) {
  const CMatrix rho = test_state();
  const CMatrix mixed = CMatrix::identity(2) * cd(0.5);
  const CMatrix out = act(gadget::bell_measurement(), rho.kron(mixed));
  const auto c = eq_up_to_scalar(out, CMatrix::identity(4) * cd(0.25), 1e-12);
  ASSERT_TRUE(c);
  EXPECT_GT(*c, 0.0);
}

TEST(Protocols, OutcomeTags) {
  using detail::boundary_components;
  EXPECT_TRUE(outcome_holds(gen::identity(2), Outcome::perfect_quantum_channel));
  EXPECT_FALSE(outcome_holds(gen::swap(), Outcome::perfect_quantum_channel));
  EXPECT_TRUE(outcome_holds(compose_seq(gen::ground(), gen::mix()), Outcome::disconnected));
  EXPECT_FALSE(outcome_holds(gadget::classical_channel(), Outcome::disconnected));
  EXPECT_TRUE(outcome_holds(gadget::classical_channel(), Outcome::shared_classical_data));
  EXPECT_FALSE(outcome_holds(gen::identity(1), Outcome::shared_classical_data));
}

TEST(Protocols, ExactScalarPolicyIsStricterThanRay) {
  // Protocols hold only up to a positive normalization factor.
  const CaseReport ray = verify("teleportation");
  EXPECT_TRUE(ray.pass());
  ASSERT_TRUE(ray.report.oracle_scalar);
  EXPECT_NEAR(*ray.report.oracle_scalar, 0.0625, 1e-12);
  const CaseReport exact = verify("teleportation", {}, 1e-9, ScalarPolicy::exact);
  EXPECT_FALSE(exact.pass());
  EXPECT_TRUE(verify("ekert-same", {}, 1e-9, ScalarPolicy::exact).report.oracle_ok());
}

}  // namespace
}  // namespace diagcalc
