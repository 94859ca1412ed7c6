// SPDX-License-Identifier: MIT
//
// Noise models: Kraus forms, completeness, frozen channel actions, injection.
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qcast/channels.hpp"
#include "qcast/gates.hpp"
#include "qcast/metrics.hpp"
#include "qcast/noise.hpp"
#include "qcast/tensor_ops.hpp"

using namespace qcast;

namespace {

const std::vector<NoiseKind> kAllKinds{NoiseKind::BitFlip, NoiseKind::Depolarizing,
                                       NoiseKind::AmplitudeDamping,
                                       NoiseKind::PhaseDamping};

DensityMatrix plus_state() {
  StateVector psi = StateVector::single(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  return DensityMatrix::pure(psi);
}

DensityMatrix one_qubit(const Matrix& m) { return DensityMatrix(1, m); }

}  // namespace

TEST_CASE("Kraus operators take their textbook forms") {
  double p = 0.3;

  NoiseChannel bf = NoiseChannel::bit_flip(p);
  REQUIRE(bf.kraus.size() == 2);
  CHECK(approx_equal(bf.kraus[0], std::sqrt(1.0 - p) * gates::I2(), kStructuralTol));
  CHECK(approx_equal(bf.kraus[1], std::sqrt(p) * gates::X(), kStructuralTol));

  NoiseChannel dp = NoiseChannel::depolarizing(p);
  REQUIRE(dp.kraus.size() == 4);
  CHECK(approx_equal(dp.kraus[0], std::sqrt(1.0 - 0.75 * p) * gates::I2(),
                     kStructuralTol));
  CHECK(approx_equal(dp.kraus[1], 0.5 * std::sqrt(p) * gates::X(), kStructuralTol));
  CHECK(approx_equal(dp.kraus[2], 0.5 * std::sqrt(p) * gates::Y(), kStructuralTol));
  CHECK(approx_equal(dp.kraus[3], 0.5 * std::sqrt(p) * gates::Z(), kStructuralTol));

  NoiseChannel ad = NoiseChannel::amplitude_damping(p);
  REQUIRE(ad.kraus.size() == 2);
  Matrix ad0 = Matrix::Zero(2, 2), ad1 = Matrix::Zero(2, 2);
  ad0(0, 0) = 1.0;
  ad0(1, 1) = std::sqrt(1.0 - p);
  ad1(0, 1) = std::sqrt(p);
  CHECK(approx_equal(ad.kraus[0], ad0, kStructuralTol));
  CHECK(approx_equal(ad.kraus[1], ad1, kStructuralTol));

  NoiseChannel pd = NoiseChannel::phase_damping(p);
  REQUIRE(pd.kraus.size() == 3);
  CHECK(approx_equal(pd.kraus[0], std::sqrt(1.0 - p) * gates::I2(), kStructuralTol));
  Matrix pd1 = Matrix::Zero(2, 2), pd2 = Matrix::Zero(2, 2);
  pd1(0, 0) = std::sqrt(p);
  pd2(1, 1) = std::sqrt(p);
  CHECK(approx_equal(pd.kraus[1], pd1, kStructuralTol));
  CHECK(approx_equal(pd.kraus[2], pd2, kStructuralTol));
}

TEST_CASE("every channel satisfies Kraus completeness across the parameter range") {
  for (NoiseKind kind : kAllKinds) {
    for (double p : {0.0, 0.05, 0.25, 0.5, 0.75, 1.0}) {
      NoiseChannel ch = NoiseChannel::make(kind, p);
      auto report = validate_completeness(ch.kraus);
      CHECK(report.ok);
      CHECK(report.max_deviation <= 1e-12);
    }
    CHECK_THROWS_AS(NoiseChannel::make(kind, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::make(kind, 1.1), std::invalid_argument);
  }

  // A deliberately broken set is reported, not silently accepted.
  auto broken = validate_completeness({0.9 * gates::I2()});
  CHECK_FALSE(broken.ok);
  CHECK(broken.max_deviation == doctest::Approx(1.0 - 0.81).epsilon(1e-12));
  CHECK_FALSE(validate_completeness({}).ok);
  CHECK_THROWS_AS(validate_completeness({gates::I2(), Matrix::Identity(4, 4)}),
                  std::invalid_argument);
}

TEST_CASE("channel actions on known states match hand-computed matrices") {
  // Bit flip 0.3 on |0><0| mixes the populations.
  DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
  Matrix bf_expect(2, 2);
  bf_expect << 0.7, 0.0, 0.0, 0.3;
  CHECK(approx_equal(apply_channel(zero, NoiseChannel::bit_flip(0.3), 0).matrix(),
                     bf_expect, kStructuralTol));

  // Full depolarizing erases everything.
  CHECK(approx_equal(
      apply_channel(plus_state(), NoiseChannel::depolarizing(1.0), 0).matrix(),
      Matrix::Identity(2, 2) * 0.5, kStructuralTol));

  // Amplitude damping 0.36 on |+><+|: population flows to |0>, coherence
  // scales by sqrt(1-p) = 0.8.
  Matrix ad_expect(2, 2);
  ad_expect << 0.68, 0.40, 0.40, 0.32;
  CHECK(approx_equal(
      apply_channel(plus_state(), NoiseChannel::amplitude_damping(0.36), 0).matrix(),
      ad_expect, kStructuralTol));
  // Total damping pumps everything into |0>.
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK(approx_equal(
      apply_channel(plus_state(), NoiseChannel::amplitude_damping(1.0), 0).matrix(),
      ground, kStructuralTol));

  // Phase damping halves the off-diagonals at p = 0.5 and keeps populations.
  Matrix pd_expect(2, 2);
  pd_expect << 0.5, 0.25, 0.25, 0.5;
  CHECK(approx_equal(
      apply_channel(plus_state(), NoiseChannel::phase_damping(0.5), 0).matrix(),
      pd_expect, kStructuralTol));
}

TEST_CASE("p = 0 is the identity channel for every noise kind") {
  std::mt19937_64 rng(77);
  DensityMatrix rho(2, oracle::random_mixed(rng, 2));
  for (NoiseKind kind : kAllKinds) {
    DensityMatrix out = apply_channel(rho, NoiseChannel::make(kind, 0.0), 1);
    CHECK(approx_equal(out.matrix(), rho.matrix(), 1e-10));
  }
}

TEST_CASE("phase damping leaves diagonal states untouched") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.37;
  diag(1, 1) = 0.63;
  for (double p : {0.1, 0.5, 0.9, 1.0}) {
    DensityMatrix out = apply_channel(one_qubit(diag), NoiseChannel::phase_damping(p), 0);
    CHECK(approx_equal(out.matrix(), diag, 1e-12));
  }
}

TEST_CASE("apply_channel matches the dense Kraus-sum oracle on multi-qubit states") {
  for (NoiseKind kind : kAllKinds) {
    NoiseChannel ch = NoiseChannel::make(kind, 0.23);
    std::mt19937_64 rng(100 + static_cast<unsigned>(kind));
    DensityMatrix rho(3, oracle::random_mixed(rng, 3));
    for (QubitIndex target : {QubitIndex{0}, QubitIndex{1}, QubitIndex{2}}) {
      DensityMatrix got = apply_channel(rho, ch, target);
      Matrix expect = Matrix::Zero(8, 8);
      for (const Matrix& k : ch.kraus) {
        Matrix wide = oracle::naive_embed(k, {target}, 3);
        expect += wide * rho.matrix() * wide.adjoint();
      }
      CHECK(approx_equal(got.matrix(), expect, kAccumTol));
      CHECK(got.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("transmitted-qubit injection hits exactly the listed qubits once") {
  Circuit prep = bell_pair_prep();
  NoiseSpec spec{NoiseChannel::bit_flip(0.2), NoiseMode::TransmittedQubit, {1, 3}};
  DensityMatrix got = inject(prep, spec);

  DensityMatrix expect = run_density(prep);
  expect = apply_channel(expect, spec.channel, 1);
  expect = apply_channel(expect, spec.channel, 3);
  CHECK(approx_equal(got.matrix(), expect.matrix(), kAccumTol));

  // The untouched qubits keep their ideal marginals with the pair partner.
  NoiseSpec none{NoiseChannel::bit_flip(0.0), NoiseMode::TransmittedQubit, {1, 3}};
  CHECK(approx_equal(inject(prep, none).matrix(), run_density(prep).matrix(), 1e-10));

  NoiseSpec empty{NoiseChannel::bit_flip(0.2), NoiseMode::TransmittedQubit, {}};
  CHECK_THROWS_AS(inject(prep, empty), std::invalid_argument);
}

TEST_CASE("per-gate injection follows every gate on every touched qubit") {
  Circuit prep = bell_pair_prep();  // H(0), CX(0,1), H(2), CX(2,3)
  NoiseSpec spec{NoiseChannel::depolarizing(0.15), NoiseMode::PerGate, {}};
  DensityMatrix got = inject(prep, spec);

  DensityMatrix expect = DensityMatrix::pure(StateVector::zero(4));
  for (const Gate& g : prep.gates) {
    apply_unitary(expect, gate_matrix(g), g.qubits);
    for (QubitIndex q : g.qubits) expect = apply_channel(expect, spec.channel, q);
  }
  CHECK(approx_equal(got.matrix(), expect.matrix(), kAccumTol));
  CHECK(got.trace_real() == doctest::Approx(1.0).epsilon(1e-10));

  // Six single-qubit hits for the Bell prep: 1 + 2 + 1 + 2.
  // With p = 0 this reduces to the ideal preparation.
  NoiseSpec clean{NoiseChannel::depolarizing(0.0), NoiseMode::PerGate, {}};
  CHECK(approx_equal(inject(prep, clean).matrix(), run_density(prep).matrix(), 1e-10));
}

TEST_CASE("preparation fidelity under noise decreases monotonically in p") {
  StateVector ideal = run_statevector(bell_pair_prep());
  for (NoiseKind kind : kAllKinds) {
    double prev = 1.0 + 1e-12;
    for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
      NoiseSpec spec{NoiseChannel::make(kind, p), NoiseMode::TransmittedQubit, {1, 3}};
      double f = fidelity_pure(ideal, inject(bell_pair_prep(), spec));
      CHECK(f <= prev + 1e-12);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("fidelity of a Bell pair under one-sided bit flip is exactly 1 - p") {
  StateVector phi = bell(BellKind::PhiPlus);
  for (double p : {0.0, 0.1, 0.25, 0.5, 1.0}) {
    DensityMatrix noisy =
        apply_channel(DensityMatrix::pure(phi), NoiseChannel::bit_flip(p), 1);
    CHECK(fidelity_pure(phi, noisy) == doctest::Approx(1.0 - p).epsilon(1e-12));
  }
}

TEST_CASE("noise names round-trip through their string forms") {
  for (NoiseKind kind : kAllKinds) CHECK(noise_kind_from_string(to_string(kind)) == kind);
  CHECK(to_string(NoiseKind::BitFlip) == "bit-flip");
  CHECK(to_string(NoiseKind::Depolarizing) == "depolarizing");
  CHECK(to_string(NoiseKind::AmplitudeDamping) == "amplitude-damping");
  CHECK(to_string(NoiseKind::PhaseDamping) == "phase-damping");
  CHECK_THROWS_AS(noise_kind_from_string("thermal"), std::invalid_argument);

  CHECK(noise_mode_from_string("transmitted") == NoiseMode::TransmittedQubit);
  CHECK(noise_mode_from_string("per-gate") == NoiseMode::PerGate);
  CHECK(to_string(NoiseMode::PerGate) == "per-gate");
  CHECK_THROWS_AS(noise_mode_from_string("global"), std::invalid_argument);
}
