// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qcast {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using QubitIndex = std::size_t;

// Tolerance tiers used across the library:
//   structural  - Hermiticity, orthonormality, PSD slack on eigenvalues
//   equality    - state/operator equality after a handful of operations
//   accumulated - long pipelines (many gates / Kraus applications)
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kEqualityTol = 1e-9;
inline constexpr double kAccumTol = 1e-8;

// Qubit 0 is the leftmost ket label, i.e. the MOST significant bit of the
// amplitude index: |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... + q_{n-1}.
// Every operation in the library (embedding, partial trace, measurement,
// Kraus application) uses this convention.
inline std::size_t bit_of(std::size_t index, QubitIndex qubit, std::size_t n_qubits) {
  return (index >> (n_qubits - 1 - qubit)) & 1u;
}

inline std::size_t dim_for(std::size_t n_qubits) {
  if (n_qubits >= 63) throw std::invalid_argument("qubit count out of range");
  return std::size_t{1} << n_qubits;
}

class StateVector {
 public:
  StateVector() : n_qubits_(0), amps_(Vector::Ones(1)) {}
  StateVector(std::size_t n_qubits, Vector amplitudes, double norm_tracked = 1.0);

  static StateVector zero(std::size_t n_qubits);                     // |0...0>
  static StateVector basis(std::size_t n_qubits, std::size_t index); // |index>
  static StateVector single(Complex a, Complex b);                   // a|0> + b|1>

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }
  Complex amp(std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

  double norm() const { return amps_.norm(); }
  double norm_tracked() const { return norm_tracked_; }
  void set_norm_tracked(double n) { norm_tracked_ = n; }

  StateVector normalized() const;

  // Throws std::invalid_argument when an invariant is broken: dimension not a
  // power of two, non-finite amplitudes, or norm drifted from norm_tracked.
  void validate() const;

 private:
  std::size_t n_qubits_;
  Vector amps_;
  double norm_tracked_ = 1.0;
};

class DensityMatrix {
 public:
  DensityMatrix() : n_qubits_(0), mat_(Matrix::Ones(1, 1)) {}
  DensityMatrix(std::size_t n_qubits, Matrix m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  Matrix& matrix() { return mat_; }

  double trace_real() const { return mat_.trace().real(); }

  // Hermitian within kStructuralTol, trace 1 within kEqualityTol, eigenvalues
  // >= -kStructuralTol, all entries finite. Throws otherwise.
  void validate() const;

 private:
  std::size_t n_qubits_;
  Matrix mat_;
};

bool approx_equal(const Vector& a, const Vector& b, double tol = kEqualityTol);
bool approx_equal(const Matrix& a, const Matrix& b, double tol = kEqualityTol);

// True when a == e^{i gamma} b for some global phase gamma.
bool equal_up_to_phase(const Vector& a, const Vector& b, double tol = kEqualityTol);

}  // namespace qcast
