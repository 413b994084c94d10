// Copyright 2026 The hqc1d Authors
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
#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

namespace {

using namespace hqc1d;
using hqc1d::testing::circuit_matrix;
using hqc1d::testing::random_circuit;
using hqc1d::testing::random_state;

const double kRootHalf = std::sqrt(0.5);

TEST(Gates, NamedConstantsAreUnitary) {
  for (const auto& g : {gates::I1(), gates::I2(), gates::S(), gates::W(), gates::Hy(), gates::Z(), gates::H(),
                        gates::X(), gates::Y(), gates::Yinv(), gates::CX(), gates::CPhaseI(), gates::Toffoli(),
                        gates::CCY()}) {
    const Matrix m = g.matrix();
    EXPECT_LE(max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())), 1e-12) << g.label();
    EXPECT_EQ(g.dim(), Eigen::Index{1} << g.arity()) << g.label();
  }
}

TEST(Gates, WToTheEighthIsIdentity) {
  Matrix p = Matrix::Identity(4, 4);
  for (int k = 0; k < 8; ++k) p = gates::W().matrix() * p;
  EXPECT_LE(max_abs(p - Matrix::Identity(4, 4)), 1e-12);
}

TEST(Gates, RejectsNonUnitaryAndBadShapes) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(Gate("bad", m), InvalidArgument);
  EXPECT_THROW(Gate("rect", Matrix::Identity(2, 4)), DimensionMismatch);
  EXPECT_THROW(Gate("three", Matrix::Identity(3, 3)), DimensionMismatch);
  EXPECT_THROW(gates::by_name("Q"), LookupError);
}

TEST(ApplyGate, IdentityLeavesStateUnchanged) {
  std::mt19937_64 rng(7);
  const auto s = random_state(3, rng);
  EXPECT_LE(max_abs(apply_gate(s, gates::I2(), {2, 3}).amps - s.amps), 0.0);
}

TEST(ApplyGate, SwapMapsZeroOneToOneZero) {
  const auto out = apply_gate(QubitState::from_bits("01"), gates::S(), {1, 2});
  EXPECT_LE(max_abs(out.amps - QubitState::from_bits("10").amps), 1e-15);
}

TEST(ApplyGate, WOnOneZeroIsEqualSuperposition) {
  const auto out = apply_gate(QubitState::from_bits("10"), gates::W(), {1, 2});
  Vector want = Vector::Zero(4);
  want(2) = kRootHalf;
  want(3) = kRootHalf;
  EXPECT_LE(max_abs(out.amps - want), 1e-15);
}

TEST(ApplyGate, ControlIsTheFirstTarget) {
  // W(2,1): control on qubit 2, so |01> rotates and |10> does not.
  const auto a = apply_gate(QubitState::from_bits("01"), gates::W(), {2, 1});
  EXPECT_NEAR(std::abs(a.amps(1)), kRootHalf, 1e-15);
  EXPECT_NEAR(std::abs(a.amps(3)), kRootHalf, 1e-15);
  const auto b = apply_gate(QubitState::from_bits("10"), gates::W(), {2, 1});
  EXPECT_NEAR(std::abs(b.amps(2)), 1.0, 1e-15);
}

TEST(ApplyGate, RejectsBadTargets) {
  const auto s = QubitState::zeros(3);
  EXPECT_THROW(apply_gate(s, gates::W(), {1}), InvalidTarget);
  EXPECT_THROW(apply_gate(s, gates::W(), {1, 1}), InvalidTarget);
  EXPECT_THROW(apply_gate(s, gates::W(), {3, 4}), InvalidTarget);
  EXPECT_THROW(apply_gate(s, gates::H(), {0}), InvalidTarget);
}

TEST(ApplyGate, PreservesNormOnRandomStates) {
  std::mt19937_64 rng(11);
  const std::vector<Gate> pool = {gates::W(), gates::S(), gates::CX(), gates::H(), gates::Toffoli(), gates::CCY()};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const auto s = random_state(n, rng);
    const Gate& g = pool[pick(rng)];
    std::vector<int> qubits(static_cast<std::size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 1);
    std::shuffle(qubits.begin(), qubits.end(), rng);
    qubits.resize(static_cast<std::size_t>(g.arity()));
    EXPECT_NEAR(apply_gate(s, g, qubits).norm(), 1.0, 1e-9);
  }
}

TEST(ApplyGate, AgreesWithKroneckerOracle) {
  std::mt19937_64 rng(3);
  for (int left = 1; left <= 3; ++left) {
    const auto s = random_state(4, rng);
    const Vector want = hqc1d::testing::embed_pair(gates::W().matrix(), 4, left) * s.amps;
    EXPECT_LE(max_abs(apply_gate(s, gates::W(), {left, left + 1}).amps - want), 1e-14);
  }
}

TEST(Circuit, AllIdentityLeavesStateUnchanged) {
  std::mt19937_64 rng(5);
  const auto s = random_state(4, rng);
  EXPECT_LE(max_abs(simulate_circuit(Circuit(4, 3), s).amps - s.amps), 1e-15);
}

TEST(Circuit, WOnPair) {
  const auto out = simulate_circuit(hqc1d::testing::w_pair(), QubitState::from_bits("10"));
  EXPECT_NEAR(out.amps(2).real(), kRootHalf, 1e-15);
  EXPECT_NEAR(out.amps(3).real(), kRootHalf, 1e-15);
}

TEST(Circuit, WThenSOnThreeQubits) {
  Circuit c(3, 1);
  c.set(1, 1, gates::W());
  c.set(1, 2, gates::S());
  const auto out = simulate_circuit(c, QubitState::from_bits("100"));
  // W(1,2)|100> = (|100> + |110>)/sqrt2; S(2,3) turns |110> into |101>.
  Vector want = Vector::Zero(8);
  want(4) = kRootHalf;
  want(5) = kRootHalf;
  EXPECT_LE(max_abs(out.amps - want), 1e-15);
  EXPECT_LE(max_abs(circuit_matrix(c) * QubitState::from_bits("100").amps - want), 1e-15);
}

TEST(Circuit, AgreesWithMatrixProductOracle) {
  std::mt19937_64 rng(17);
  const std::vector<Gate> pool = {gates::W(), gates::S(), gates::I2(), gates::CX()};
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_circuit(4, 3, pool, rng);
    const auto s = random_state(4, rng);
    EXPECT_LE(max_abs(simulate_circuit(c, s).amps - circuit_matrix(c) * s.amps), 1e-12);
  }
}

TEST(Circuit, DistributesOverRoundConcatenation) {
  std::mt19937_64 rng(23);
  const std::vector<Gate> pool = {gates::W(), gates::S(), gates::CX()};
  const auto c = random_circuit(3, 4, pool, rng);
  Circuit first(3, 1), rest(3, 3);
  for (int i = 1; i < 3; ++i) {
    first.set(1, i, c.at(1, i));
    for (int r = 2; r <= 4; ++r) rest.set(r - 1, i, c.at(r, i));
  }
  const auto s = random_state(3, rng);
  EXPECT_LE(max_abs(simulate_circuit(c, s).amps - simulate_circuit(rest, simulate_circuit(first, s)).amps), 1e-12);
}

TEST(Circuit, OneQubitGatesArePromoted) {
  Circuit c(2, 1);
  c.set(1, 1, gates::X(), false);
  const auto out = simulate_circuit(c, QubitState::from_bits("10"));
  EXPECT_NEAR(std::abs(out.amps(3)), 1.0, 1e-15);
}

TEST(Circuit, RejectsThreeQubitGatesAndBadSlots) {
  Circuit c(3, 1);
  EXPECT_THROW(c.set(1, 1, gates::Toffoli()), InvalidTarget);
  EXPECT_THROW(c.set(2, 1, gates::W()), InvalidTarget);
  EXPECT_THROW(c.set(1, 3, gates::W()), InvalidTarget);
  EXPECT_THROW(Circuit(1, 1), InvalidArgument);
  EXPECT_THROW(Circuit(2, 0), InvalidArgument);
}

TEST(Circuit, DimensionMismatchIsReported) {
  EXPECT_THROW(simulate_circuit(Circuit(3, 1), QubitState::zeros(2)), DimensionMismatch);
}

TEST(CircuitFormat, ParsesHeadersGatesAndComments) {
  const auto c = parse_circuit(
      "# sample\n"
      "QUBITS 3\n"
      "ROUNDS 2\n"
      "GATE W 1 1   # first\n"
      "GATE S 1 2\n"
      "GATE X 2 3\n");
  EXPECT_EQ(c.n(), 3);
  EXPECT_EQ(c.rounds(), 2);
  EXPECT_EQ(c.at(1, 1).label(), "W");
  EXPECT_EQ(c.at(2, 2).label(), "I(x)X");
  EXPECT_EQ(c.at(1, 2).label(), "S");
  EXPECT_TRUE(c.at(2, 1).is_identity());
}

TEST(CircuitFormat, ReportsLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_circuit(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("QUBITS 2\nROUNDS 1\nGATE W 1\n"), 3);
  EXPECT_EQ(line_of("QUBITS 2\nROUNDS 1\nFOO\n"), 3);
  EXPECT_EQ(line_of("QUBITS 3\nROUNDS 1\nGATE W 1 1\nGATE S 1 1\n"), 4);
  EXPECT_EQ(line_of("QUBITS 3\nROUNDS 1\nGATE T 1 1\n"), 3);
  EXPECT_EQ(line_of("QUBITS 3\nROUNDS 1\nGATE Q 1 1\n"), 3);
  EXPECT_EQ(line_of("QUBITS 3\nROUNDS 1\nGATE W 2 1\n"), 3);
  EXPECT_EQ(line_of("ROUNDS 1\n"), 0);
}

TEST(CircuitFormat, SampleFilesLoad) {
  const auto c = load_circuit(hqc1d::testing::source_path("samples/n3r2_ws.circ"));
  const auto ref = hqc1d::testing::worked_circuit();
  for (std::size_t k = 0; k < c.gate_count(); ++k) EXPECT_LE(max_abs(c.gate(k).matrix() - ref.gate(k).matrix()), 0.0);
  EXPECT_THROW(load_circuit("/nonexistent/file.circ"), ParseError);
}

TEST(Identities, AllNamedProductsMatchTheirTargets) {
  for (const auto& name : identity_names())
    EXPECT_LE(check_identity(synth(name), identity_target(name)), 1e-12) << name;
}

TEST(Identities, SequenceSizes) {
  EXPECT_EQ(synth("Z").size(), 14u);
  EXPECT_EQ(synth("CX").size(), 19u);
  const auto th = synth("L2Y_TH").factors();
  ASSERT_EQ(th.size(), 4u);
  EXPECT_EQ(th[0].gate.label(), "T");
  EXPECT_EQ(th[1].targets, std::vector<int>{3});
}

TEST(Identities, ZSequenceMatchesItsWrittenForm) {
  // W^4 S W^4 S W^4: 4 + 1 + 4 + 1 + 4 factors, all on (1, 2).
  const auto f = synth("Z").factors();
  std::string word;
  for (const auto& a : f) {
    word += a.gate.label();
    EXPECT_EQ(a.targets, (std::vector<int>{1, 2}));
  }
  EXPECT_EQ(word, "WWWWSWWWWSWWWW");
}

TEST(Identities, CxSequenceMatchesItsWrittenForm) {
  std::string word;
  for (const auto& a : synth("CX").factors()) word += a.gate.label();
  EXPECT_EQ(word, "WWSWWWWWWSWWSWWWWWW");
}

TEST(Identities, WrittenOrderIsTheMatrixProduct) {
  // Applying the factors left to right in time order breaks CX and Fig-5 style products.
  for (const std::string name : {"CX", "L2Y_TH"}) {
    const auto seq = synth(name);
    GateSequence reversed(seq.qubits());
    for (const auto& a : seq.applications()) reversed.times(a.gate, a.targets);
    EXPECT_GT(check_identity(reversed, identity_target(name)), 1e-3) << name;
  }
}

TEST(Identities, EmptySequenceIsIdentity) {
  EXPECT_EQ(check_identity(GateSequence(2), Matrix::Identity(4, 4)), 0.0);
  EXPECT_THROW(check_identity(GateSequence(2), Matrix::Identity(8, 8)), DimensionMismatch);
}

TEST(Identities, UnknownNameIsALookupError) {
  EXPECT_THROW(synth("nope"), LookupError);
  EXPECT_THROW(identity_target("nope"), LookupError);
}

TEST(Identities, HyRealisedByWWithAncillaInOne) {
  // The standalone constant equals W acting on |1> (x) psi.
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_state(1, rng);
    QubitState s{2, Vector::Zero(4)};
    s.amps(2) = psi.amps(0);
    s.amps(3) = psi.amps(1);
    const auto out = apply_gate(s, gates::W(), {1, 2});
    const Vector want = gates::Hy().matrix() * psi.amps;
    EXPECT_LE(max_abs(out.amps.tail(2) - want), 1e-15);
    EXPECT_LE(out.amps.head(2).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Identities, SequenceRejectsBadTargets) {
  GateSequence s(2);
  EXPECT_THROW(s.times(gates::W(), {1, 3}), InvalidTarget);
  EXPECT_THROW(s.times(gates::W(), {1, 1}), InvalidTarget);
  EXPECT_THROW(s.times(gates::W(), {1}), InvalidTarget);
}

TEST(Compile, ZAndCxBecomeWsCircuits) {
  const auto c = parse_circuit("QUBITS 3\nROUNDS 2\nGATE CX 1 1\nGATE Z 1 3\nGATE Z 2 1\nGATE W 2 2\n");
  const auto w = compile_for_ham8(c);
  for (std::size_t k = 0; k < w.gate_count(); ++k) {
    const auto& g = w.gate(k);
    EXPECT_TRUE(g.is_identity() || g.label() == "W" || g.label() == "S") << g.label();
  }
  EXPECT_LE(max_abs(circuit_matrix(w) - circuit_matrix(c)), 1e-12);
}

TEST(Compile, NativeRoundsAreKept) {
  const auto c = hqc1d::testing::worked_circuit();
  EXPECT_EQ(compile_for_ham8(c).rounds(), 2);
}

TEST(Compile, GatesNeedingAnAncillaAreRejected) {
  Circuit c(2, 1);
  c.set(1, 1, gates::H());
  EXPECT_THROW(compile_for_ham8(c), UnsupportedGate);
}

}  // namespace
