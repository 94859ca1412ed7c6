// SPDX-License-Identifier: MIT
//
// Channel library: catalogued entangled resources and their party layout.
#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qcast/channels.hpp"
#include "qcast/tensor_ops.hpp"

using namespace qcast;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool marginal_is_mixed(const StateVector& psi, QubitIndex q) {
  DensityMatrix red = partial_trace(DensityMatrix::pure(psi), {q});
  return approx_equal(red.matrix(), Matrix::Identity(2, 2) * 0.5, kStructuralTol);
}

}  // namespace

TEST_CASE("bell states have the four canonical amplitude patterns") {
  auto check = [](BellKind kind, std::size_t i, std::size_t j, double sj) {
    StateVector psi = bell(kind);
    REQUIRE(psi.n_qubits() == 2);
    CHECK(std::abs(psi.amp(i) - Complex(kInvSqrt2)) < kStructuralTol);
    CHECK(std::abs(psi.amp(j) - Complex(sj * kInvSqrt2)) < kStructuralTol);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  };
  check(BellKind::PhiPlus, 0, 3, +1.0);
  check(BellKind::PhiMinus, 0, 3, -1.0);
  check(BellKind::PsiPlus, 1, 2, +1.0);
  check(BellKind::PsiMinus, 1, 2, -1.0);

  for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                    BellKind::PsiMinus}) {
    StateVector psi = bell(kind);
    CHECK(marginal_is_mixed(psi, 0));
    CHECK(marginal_is_mixed(psi, 1));
  }
}

TEST_CASE("nonmax_bell builds a|00>+b|11> and validates its inputs") {
  StateVector psi = nonmax_bell(0.8, 0.6);
  CHECK(std::abs(psi.amp(0) - Complex(0.8)) < kStructuralTol);
  CHECK(std::abs(psi.amp(3) - Complex(0.6)) < kStructuralTol);
  CHECK(std::abs(psi.amp(1)) == 0.0);
  CHECK(std::abs(psi.amp(2)) == 0.0);

  // Both marginals carry the squared Schmidt coefficients.
  for (QubitIndex q : {QubitIndex{0}, QubitIndex{1}}) {
    DensityMatrix red = partial_trace(DensityMatrix::pure(psi), {q});
    Matrix expect(2, 2);
    expect << 0.64, 0.0, 0.0, 0.36;
    CHECK(approx_equal(red.matrix(), expect, kStructuralTol));
  }

  // Complex b is allowed as long as the state stays normalized.
  StateVector tilted = nonmax_bell(0.6, Complex(0.0, 0.8));
  CHECK(std::abs(tilted.amp(3) - Complex(0.0, 0.8)) < kStructuralTol);

  CHECK_THROWS_AS(nonmax_bell(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nonmax_bell(-0.8, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(nonmax_bell(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nonmax_bell(0.8, 0.7), std::invalid_argument);
}

TEST_CASE("ghz puts equal weight on the all-zero and all-one strings") {
  for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
    StateVector psi = ghz(n);
    REQUIRE(psi.n_qubits() == n);
    CHECK(std::abs(psi.amp(0) - Complex(kInvSqrt2)) < kStructuralTol);
    CHECK(std::abs(psi.amp(dim_for(n) - 1) - Complex(kInvSqrt2)) < kStructuralTol);
    for (std::size_t x = 1; x + 1 < dim_for(n); ++x) CHECK(std::abs(psi.amp(x)) == 0.0);
    for (QubitIndex q = 0; q < n; ++q) CHECK(marginal_is_mixed(psi, q));
  }
  CHECK_THROWS_AS(ghz(1), std::invalid_argument);
}

TEST_CASE("cluster_yan matches its four-term expansion") {
  StateVector psi = cluster_yan();
  REQUIRE(psi.n_qubits() == 4);
  CHECK(std::abs(psi.amp(0b0000) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(psi.amp(0b0101) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(psi.amp(0b1010) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(psi.amp(0b1111) - Complex(-0.5)) < kStructuralTol);
  std::size_t nonzero = 0;
  for (std::size_t x = 0; x < 16; ++x)
    if (std::abs(psi.amp(x)) > 0.0) ++nonzero;
  CHECK(nonzero == 4);
  for (QubitIndex q = 0; q < 4; ++q) CHECK(marginal_is_mixed(psi, q));
}

TEST_CASE("cluster_plus is two Bell pairs split across the qubit pairs (0,2),(1,3)") {
  StateVector psi = cluster_plus();
  StateVector pairs = tensor(bell(BellKind::PhiPlus), bell(BellKind::PhiPlus));
  // Reorder (pair1 sender, pair1 receiver, pair2 sender, pair2 receiver) into
  // (senders first, then receivers).
  Matrix perm = oracle::qubit_permutation({0, 2, 1, 3}, 4);
  CHECK(approx_equal(psi.amplitudes(), perm * pairs.amplitudes(), kStructuralTol));
}

TEST_CASE("table1_row2 matches its expansion and is maximally entangled per qubit") {
  StateVector psi = table1_row2();
  REQUIRE(psi.n_qubits() == 4);
  for (std::size_t x : {std::size_t{0b0001}, std::size_t{0b0110}, std::size_t{0b1011},
                        std::size_t{0b1100}})
    CHECK(std::abs(psi.amp(x) - Complex(0.5)) < kStructuralTol);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (QubitIndex q = 0; q < 4; ++q) CHECK(marginal_is_mixed(psi, q));
}

TEST_CASE("channel_general assigns one receiver per part and flags weak links") {
  std::vector<StateVector> parts{bell(BellKind::PhiPlus), nonmax_bell(0.8, 0.6)};
  BroadcastChannel ch = channel_general(parts);
  REQUIRE(ch.n_qubits() == 4);
  CHECK(ch.owner(0) == PartyId{Role::Sender, 1});
  CHECK(ch.owner(1) == PartyId{Role::Receiver, 1});
  CHECK(ch.owner(2) == PartyId{Role::Sender, 1});
  CHECK(ch.owner(3) == PartyId{Role::Receiver, 2});
  CHECK(ch.qubits_of({Role::Sender, 1}) == std::vector<QubitIndex>{0, 2});
  CHECK(ch.qubits_of({Role::Receiver, 2}) == std::vector<QubitIndex>{3});
  CHECK(ch.probabilistic());

  BroadcastChannel maximal = channel_general({bell(BellKind::PhiPlus), bell(BellKind::PhiPlus)});
  CHECK_FALSE(maximal.probabilistic());
  StateVector assembled = maximal.state();
  StateVector expect = tensor(bell(BellKind::PhiPlus), bell(BellKind::PhiPlus));
  CHECK(approx_equal(assembled.amplitudes(), expect.amplitudes(), kStructuralTol));

  CHECK_THROWS_AS(channel_general({}), std::invalid_argument);
  CHECK_THROWS_AS(channel_general({ghz(3)}), std::invalid_argument);
}

TEST_CASE("channel_joint_ghz lays out sender pairs plus one receiver per part") {
  BroadcastChannel ch = channel_joint_ghz(2);
  REQUIRE(ch.n_qubits() == 6);
  CHECK(ch.owner(0) == PartyId{Role::Sender, 1});
  CHECK(ch.owner(1) == PartyId{Role::Sender, 2});
  CHECK(ch.owner(2) == PartyId{Role::Receiver, 1});
  CHECK(ch.qubits_of({Role::Sender, 2}) == std::vector<QubitIndex>{1, 4});
  CHECK(ch.qubits_of({Role::Receiver, 2}) == std::vector<QubitIndex>{5});
  StateVector expect = tensor(ghz(3), ghz(3));
  CHECK(approx_equal(ch.state().amplitudes(), expect.amplitudes(), kStructuralTol));

  CHECK_THROWS_AS(channel_joint({bell(BellKind::PhiPlus)}), std::invalid_argument);
  CHECK_THROWS_AS(channel_joint_ghz(0), std::invalid_argument);
}

TEST_CASE("channel_controlled superposes channels against a computational ancilla") {
  StateVector two = channel_controlled({bell(BellKind::PhiPlus), bell(BellKind::PsiPlus)});
  REQUIRE(two.n_qubits() == 3);  // one ancilla qubit for two channels
  // (1/2)(|00>|0> + |11>|0> + |01>|1> + |10>|1>)
  CHECK(std::abs(two.amp(0b000) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(two.amp(0b110) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(two.amp(0b011) - Complex(0.5)) < kStructuralTol);
  CHECK(std::abs(two.amp(0b101) - Complex(0.5)) < kStructuralTol);
  CHECK(two.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Three channels need a two-qubit ancilla; weights become 1/sqrt(3).
  StateVector three = channel_controlled(
      {bell(BellKind::PhiPlus), bell(BellKind::PsiPlus), bell(BellKind::PhiMinus)});
  REQUIRE(three.n_qubits() == 4);
  double w = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(three.amp(0b0000) - Complex(w * kInvSqrt2)) < kStructuralTol);
  CHECK(std::abs(three.amp(0b0101) - Complex(w * kInvSqrt2)) < kStructuralTol);
  CHECK(std::abs(three.amp(0b0010) - Complex(w * kInvSqrt2)) < kStructuralTol);
  CHECK(std::abs(three.amp(0b1110) - Complex(-w * kInvSqrt2)) < kStructuralTol);
  CHECK(three.norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(channel_controlled({bell(BellKind::PhiPlus)}), std::invalid_argument);
  CHECK_THROWS_AS(channel_controlled({bell(BellKind::PhiPlus), ghz(3)}),
                  std::invalid_argument);
  // Distinctness is up to a global phase, so a sign flip is still a repeat.
  StateVector flipped(2, -bell(BellKind::PhiPlus).amplitudes());
  CHECK_THROWS_AS(channel_controlled({bell(BellKind::PhiPlus), flipped}),
                  std::invalid_argument);
}

TEST_CASE("channel_multidirectional wires one Bell pair per ordered party pair") {
  CHECK(ordered_pairs(3) ==
        std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}});

  BroadcastChannel ch = channel_multidirectional(3);
  REQUIRE(ch.n_qubits() == 12);
  CHECK(ch.factors().size() == 6);
  CHECK(ch.owner(0) == PartyId{Role::Sender, 1});
  CHECK(ch.owner(1) == PartyId{Role::Receiver, 2});
  CHECK(ch.qubits_of({Role::Sender, 1}) == std::vector<QubitIndex>{0, 2});
  CHECK(ch.qubits_of({Role::Receiver, 1}) == std::vector<QubitIndex>{5, 9});
  CHECK_FALSE(ch.probabilistic());

  CHECK_THROWS_AS(channel_multidirectional(1), std::invalid_argument);
}

TEST_CASE("BroadcastChannel refuses to materialize beyond its qubit cap") {
  // Four parties need 12 Bell pairs = 24 qubits; the layout stays available
  // but the assembled vector would be 2^24 amplitudes.
  BroadcastChannel big = channel_multidirectional(4);
  CHECK(big.n_qubits() == 24);
  CHECK_THROWS_AS(big.state(), std::runtime_error);

  CHECK_THROWS_AS(BroadcastChannel({bell(BellKind::PhiPlus)}, {{Role::Sender, 1}}),
                  std::invalid_argument);
}

TEST_CASE("party ids print with their role and index") {
  CHECK(to_string(PartyId{Role::Sender, 1}) == "sender-1");
  CHECK(to_string(PartyId{Role::Receiver, 2}) == "receiver-2");
  CHECK(to_string(PartyId{Role::Controller, 1}) == "controller-1");
}
