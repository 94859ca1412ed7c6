// SPDX-License-Identifier: MIT
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qcast/gates.hpp"
#include "qcast/state.hpp"
#include "qcast/tensor_ops.hpp"

using namespace qcast;

TEST_CASE("qubit 0 is the most significant index bit") {
  // X on qubit 0 of |00> must give |10> = index 2
  StateVector psi = StateVector::zero(2);
  apply_unitary(psi, gates::X(), {0});
  CHECK(std::abs(psi.amp(2) - 1.0) < 1e-15);
  // X on qubit 1 gives |01> = index 1
  StateVector phi = StateVector::zero(2);
  apply_unitary(phi, gates::X(), {1});
  CHECK(std::abs(phi.amp(1) - 1.0) < 1e-15);
  CHECK(bit_of(0b10, 0, 2) == 1);
  CHECK(bit_of(0b10, 1, 2) == 0);
}

TEST_CASE("tensor product composes states in qubit order") {
  StateVector a = StateVector::single(1.0, 0.0);  // |0>
  StateVector b = StateVector::single(0.0, 1.0);  // |1>
  StateVector ab = tensor(a, b);                  // |01> -> index 1
  CHECK(std::abs(ab.amp(1) - 1.0) < 1e-15);
  CHECK(ab.n_qubits() == 2);

  Matrix k = kron(gates::X(), gates::I2());
  CHECK(approx_equal(k, oracle::naive_embed(gates::X(), {0}, 2), 1e-15));
}

TEST_CASE("embed_operator matches the permutation-conjugation oracle") {
  std::mt19937_64 rng(101);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int rep = 0; rep < 4; ++rep) {
      Matrix op1 = oracle::random_unitary(rng, 2);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::size_t q = pick(rng);
      CHECK(approx_equal(embed_operator(op1, {q}, n), oracle::naive_embed(op1, {q}, n),
                         1e-12));

      Matrix op2 = oracle::random_unitary(rng, 4);
      std::size_t q2 = pick(rng);
      while (q2 == q) q2 = pick(rng);
      CHECK(approx_equal(embed_operator(op2, {q, q2}, n),
                         oracle::naive_embed(op2, {q, q2}, n), 1e-12));
    }
  }
  CHECK_THROWS_AS(embed_operator(gates::X(), {0, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_operator(gates::X(), {5}, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_operator(gates::X(), {}, 2), std::invalid_argument);
}

TEST_CASE("apply_unitary agrees with dense embedding on states and densities") {
  std::mt19937_64 rng(202);
  for (int rep = 0; rep < 6; ++rep) {
    std::size_t n = 3;
    Vector v = oracle::random_ket(rng, 8);
    Matrix op = oracle::random_unitary(rng, 4);
    std::vector<QubitIndex> targets = {2, 0};  // deliberately out of order

    StateVector psi(n, v);
    apply_unitary(psi, op, targets);
    Matrix full = oracle::naive_embed(op, targets, n);
    CHECK(approx_equal(psi.amplitudes(), Vector(full * v), 1e-12));

    DensityMatrix rho(n, Matrix(v * v.adjoint()));
    apply_unitary(rho, op, targets);
    CHECK(approx_equal(rho.matrix(), Matrix(full * (v * v.adjoint()) * full.adjoint()),
                       1e-12));
  }
}

TEST_CASE("partial_trace matches the direct-sum oracle and keeps order") {
  std::mt19937_64 rng(303);
  for (int rep = 0; rep < 6; ++rep) {
    Matrix rho = oracle::random_mixed(rng, 3);
    for (std::vector<QubitIndex> keep :
         {std::vector<QubitIndex>{0}, {2}, {0, 2}, {2, 0}, {1, 2}}) {
      DensityMatrix r(3, rho);
      DensityMatrix traced = partial_trace(r, keep);
      CHECK(approx_equal(traced.matrix(), oracle::naive_partial_trace(rho, keep, 3),
                         1e-12));
      CHECK(std::abs(traced.trace_real() - 1.0) < 1e-10);
    }
  }
  // tracing everything but one qubit of a product state recovers the factor
  StateVector prod = tensor(StateVector::single(0.6, 0.8), StateVector::single(1.0, 0.0));
  DensityMatrix rho = DensityMatrix::pure(prod);
  Matrix m = partial_trace(rho, {0}).matrix();
  CHECK(std::abs(m(0, 0).real() - 0.36) < 1e-12);
  CHECK(std::abs(m(1, 1).real() - 0.64) < 1e-12);
}

TEST_CASE("measure_projective enumerates complete renormalized branches") {
  std::mt19937_64 rng(404);
  for (int rep = 0; rep < 5; ++rep) {
    std::size_t n = 3;
    Vector v = oracle::random_ket(rng, 8);
    StateVector psi(n, v);
    Matrix u = oracle::random_unitary(rng, 2);
    std::vector<StateVector> basis = {StateVector(1, u.col(0)), StateVector(1, u.col(1))};
    std::vector<QubitIndex> targets = {1};

    auto branches = measure_projective(psi, targets, basis);
    auto expect = oracle::naive_measure(v, targets,
                                        {Vector(u.col(0)), Vector(u.col(1))}, n);
    REQUIRE(branches.size() == 2);
    double total = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(branches[k].outcome == k);
      CHECK(branches[k].probability == doctest::Approx(expect[k].probability).epsilon(1e-12));
      CHECK(approx_equal(branches[k].state.amplitudes(), expect[k].state, 1e-10));
      if (branches[k].probability > 1e-14)
        CHECK(std::abs(branches[k].state.norm() - 1.0) < 1e-10);
      total += branches[k].probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("measure_projective on density matrices matches the pure route") {
  std::mt19937_64 rng(505);
  Vector v = oracle::random_ket(rng, 8);
  StateVector psi(3, v);
  DensityMatrix rho = DensityMatrix::pure(psi);
  Matrix u = oracle::random_unitary(rng, 4);
  std::vector<StateVector> basis;
  for (int c = 0; c < 4; ++c) basis.emplace_back(2, Vector(u.col(c)));

  auto sv = measure_projective(psi, {0, 2}, basis);
  auto dm = measure_projective(rho, {0, 2}, basis);
  REQUIRE(sv.size() == 4);
  REQUIRE(dm.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(dm[k].probability == doctest::Approx(sv[k].probability).epsilon(1e-12));
    if (sv[k].probability > 1e-12) {
      Matrix mm = sv[k].state.amplitudes() * sv[k].state.amplitudes().adjoint();
      CHECK(approx_equal(dm[k].state.matrix(), mm, 1e-10));
    }
  }
}

TEST_CASE("zero-probability branches come back as zero states") {
  // measuring |0> against the {|0>,|1>} basis kills the |1> branch
  StateVector psi = StateVector::zero(2);
  std::vector<StateVector> basis = {StateVector::single(1, 0), StateVector::single(0, 1)};
  auto branches = measure_projective(psi, {0}, basis);
  REQUIRE(branches.size() == 2);
  CHECK(branches[1].probability == doctest::Approx(0.0));
  CHECK(branches[1].state.norm() == doctest::Approx(0.0));
  CHECK(branches[1].state.norm_tracked() == doctest::Approx(0.0));
  CHECK(branches[0].probability == doctest::Approx(1.0));
}

TEST_CASE("measurement basis must be orthonormal and complete") {
  StateVector psi = StateVector::zero(2);
  std::vector<StateVector> tooFew = {StateVector::single(1, 0)};
  CHECK_THROWS_AS(measure_projective(psi, {0}, tooFew), std::invalid_argument);
  std::vector<StateVector> skewed = {StateVector::single(1, 0),
                                     StateVector::single(std::sqrt(0.5), std::sqrt(0.5))};
  CHECK_THROWS_AS(measure_projective(psi, {0}, skewed), std::invalid_argument);
}

TEST_CASE("apply_kraus equals the dense conjugation sum") {
  std::mt19937_64 rng(606);
  Matrix rho = oracle::random_mixed(rng, 2);
  double p = 0.3;
  std::vector<Matrix> kraus = {std::sqrt(1 - p) * gates::I2(), std::sqrt(p) * gates::X()};
  DensityMatrix out = apply_kraus(DensityMatrix(2, rho), kraus, 1);
  Matrix expect = Matrix::Zero(4, 4);
  for (const Matrix& k : kraus) {
    Matrix wide = oracle::naive_embed(k, {1}, 2);
    expect += wide * rho * wide.adjoint();
  }
  CHECK(approx_equal(out.matrix(), expect, 1e-12));
  CHECK(std::abs(out.trace_real() - 1.0) < 1e-10);
}

TEST_CASE("hermitian_sqrt squares back and rejects negative spectra") {
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(approx_equal(hermitian_sqrt(half), Matrix((1.0 / std::sqrt(2.0)) * Matrix::Identity(2, 2)),
                     1e-12));

  std::mt19937_64 rng(707);
  Matrix rho = oracle::random_mixed(rng, 2);
  Matrix root = hermitian_sqrt(rho);
  CHECK(approx_equal(root * root, rho, 1e-10));

  Matrix neg = -Matrix::Identity(2, 2);
  CHECK_THROWS_AS(hermitian_sqrt(neg), std::invalid_argument);
}

TEST_CASE("state and density validation guards invariants") {
  CHECK_THROWS_AS(StateVector(2, Vector::Ones(3)), std::invalid_argument);
  StateVector ok = StateVector::basis(2, 3);
  ok.validate();
  DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  rho.validate();
  CHECK(std::abs(rho.matrix()(0, 0).real() - 0.25) < 1e-15);

  Matrix bad = Matrix::Identity(4, 4);  // trace 4, not a state
  CHECK_THROWS_AS(DensityMatrix(2, bad).validate(), std::invalid_argument);
}

TEST_CASE("equal_up_to_phase ignores a global phase only") {
  Vector a(2), b(2);
  a << 0.6, 0.8;
  b = std::polar(1.0, 1.234) * a;
  CHECK(equal_up_to_phase(a, b));
  Vector c(2);
  c << 0.8, 0.6;
  CHECK_FALSE(equal_up_to_phase(a, c));
}
