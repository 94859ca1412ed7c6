// SPDX-License-Identifier: MIT
#include "qcast/state.hpp"

#include <cmath>

namespace qcast {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

bool all_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits, Vector amplitudes, double norm_tracked)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)), norm_tracked_(norm_tracked) {
  if (static_cast<std::size_t>(amps_.size()) != dim_for(n_qubits_))
    throw std::invalid_argument("StateVector: amplitude count != 2^n_qubits");
}

StateVector StateVector::zero(std::size_t n_qubits) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_for(n_qubits)));
  v(0) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  std::size_t d = dim_for(n_qubits);
  if (index >= d) throw std::invalid_argument("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::single(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return StateVector(1, std::move(v));
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::invalid_argument("StateVector::normalized: zero state");
  return StateVector(n_qubits_, amps_ / n, 1.0);
}

void StateVector::validate() const {
  if (!is_power_of_two(dim()) || dim() != dim_for(n_qubits_))
    throw std::invalid_argument("StateVector: dimension is not 2^n_qubits");
  if (!all_finite(amps_))
    throw std::invalid_argument("StateVector: non-finite amplitude");
  if (std::abs(norm() - norm_tracked_) > kEqualityTol)
    throw std::invalid_argument("StateVector: norm drifted from tracked value");
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, Matrix m)
    : n_qubits_(n_qubits), mat_(std::move(m)) {
  std::size_t d = dim_for(n_qubits_);
  if (static_cast<std::size_t>(mat_.rows()) != d ||
      static_cast<std::size_t>(mat_.cols()) != d)
    throw std::invalid_argument("DensityMatrix: shape != 2^n x 2^n");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.n_qubits(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
  std::size_t d = dim_for(n_qubits);
  Matrix m = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  return DensityMatrix(n_qubits, m / static_cast<double>(d));
}

void DensityMatrix::validate() const {
  if (!all_finite(mat_)) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > kEqualityTol ||
      std::abs(mat_.trace().imag()) > kEqualityTol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStructuralTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

bool approx_equal(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool equal_up_to_phase(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  // Pick the largest component of b to fix the phase.
  Eigen::Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  if (std::abs(b(k)) < tol) return approx_equal(a, b, tol);
  Complex phase = a(k) / b(k);
  double mag = std::abs(phase);
  if (std::abs(mag - 1.0) > tol) return false;
  return approx_equal(a, b * phase, tol);
}

}  // namespace qcast
