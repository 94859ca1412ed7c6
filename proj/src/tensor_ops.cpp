// SPDX-License-Identifier: MIT
#include "qcast/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qcast {

namespace {

constexpr double kBranchZero = 1e-14;  // below this a branch is numerically dead

// Maps between full indices and the sub-index spanned by `targets`;
// targets[0] is the most significant bit of the sub-index.
struct TargetMap {
  std::size_t n_qubits;
  std::size_t k;
  std::vector<std::size_t> shifts;
  std::size_t mask = 0;

  TargetMap(const std::vector<QubitIndex>& targets, std::size_t n) : n_qubits(n), k(targets.size()) {
    if (targets.empty()) throw std::invalid_argument("target list is empty");
    std::set<QubitIndex> seen;
    shifts.reserve(k);
    for (QubitIndex q : targets) {
      if (q >= n) throw std::invalid_argument("target qubit out of range");
      if (!seen.insert(q).second) throw std::invalid_argument("duplicate target qubit");
      std::size_t shift = n - 1 - q;
      shifts.push_back(shift);
      mask |= std::size_t{1} << shift;
    }
  }

  std::size_t scatter(std::size_t sub) const {
    std::size_t x = 0;
    for (std::size_t j = 0; j < k; ++j)
      x |= ((sub >> (k - 1 - j)) & 1u) << shifts[j];
    return x;
  }

  std::size_t gather(std::size_t x) const {
    std::size_t sub = 0;
    for (std::size_t j = 0; j < k; ++j)
      sub |= ((x >> shifts[j]) & 1u) << (k - 1 - j);
    return sub;
  }
};

// Enumerates every index with all target bits zero (the "rest" patterns).
std::vector<std::size_t> rest_patterns(const TargetMap& tm) {
  std::size_t dim = dim_for(tm.n_qubits);
  std::vector<std::size_t> rests;
  rests.reserve(dim >> tm.k);
  for (std::size_t x = 0; x < dim; ++x)
    if ((x & tm.mask) == 0) rests.push_back(x);
  return rests;
}

void check_small_op(const Matrix& op, std::size_t k) {
  auto d = static_cast<Eigen::Index>(dim_for(k));
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("operator dimension does not match target count");
}

// out = (op embedded on targets) * in, without forming the embedding.
Vector apply_on_targets(const Vector& in, const Matrix& op, const TargetMap& tm) {
  std::size_t sub_dim = dim_for(tm.k);
  Vector out = Vector::Zero(in.size());
  for (std::size_t base = 0; base < static_cast<std::size_t>(in.size()); ++base) {
    if (base & tm.mask) continue;
    for (std::size_t r = 0; r < sub_dim; ++r) {
      Complex acc = 0;
      for (std::size_t c = 0; c < sub_dim; ++c)
        acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
               in(static_cast<Eigen::Index>(base | tm.scatter(c)));
      out(static_cast<Eigen::Index>(base | tm.scatter(r))) = acc;
    }
  }
  return out;
}

Matrix conjugate_on_targets(const Matrix& rho, const Matrix& op, const TargetMap& tm) {
  // op rho op^dag, applied columnwise then rowwise.
  Matrix tmp(rho.rows(), rho.cols());
  for (Eigen::Index j = 0; j < rho.cols(); ++j)
    tmp.col(j) = apply_on_targets(rho.col(j), op, tm);
  Matrix out(rho.rows(), rho.cols());
  Matrix op_conj = op.conjugate();
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    out.row(i) = apply_on_targets(tmp.row(i).transpose(), op_conj, tm).transpose();
  return out;
}

void check_basis(const std::vector<StateVector>& basis, std::size_t k) {
  std::size_t sub_dim = dim_for(k);
  if (basis.size() != sub_dim)
    throw std::invalid_argument("measurement basis must span the target subspace");
  for (const auto& b : basis)
    if (b.n_qubits() != k)
      throw std::invalid_argument("measurement basis vector has wrong qubit count");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      Complex g = basis[i].amplitudes().adjoint() * basis[j].amplitudes();
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > kStructuralTol)
        throw std::invalid_argument("measurement basis is not orthonormal");
    }
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector out(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      out(static_cast<Eigen::Index>(i * b.dim() + j)) = a.amp(i) * b.amp(j);
  return StateVector(a.n_qubits() + b.n_qubits(), std::move(out),
                     a.norm_tracked() * b.norm_tracked());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.n_qubits() + b.n_qubits(), kron(a.matrix(), b.matrix()));
}

Matrix embed_operator(const Matrix& op, const std::vector<QubitIndex>& targets,
                      std::size_t n_qubits) {
  TargetMap tm(targets, n_qubits);
  check_small_op(op, tm.k);
  std::size_t dim = dim_for(n_qubits);
  std::size_t sub_dim = dim_for(tm.k);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & tm.mask) continue;
    for (std::size_t r = 0; r < sub_dim; ++r)
      for (std::size_t c = 0; c < sub_dim; ++c)
        out(static_cast<Eigen::Index>(base | tm.scatter(r)),
            static_cast<Eigen::Index>(base | tm.scatter(c))) =
            op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return out;
}

void apply_unitary(StateVector& state, const Matrix& op,
                   const std::vector<QubitIndex>& targets) {
  TargetMap tm(targets, state.n_qubits());
  check_small_op(op, tm.k);
  state.amplitudes() = apply_on_targets(state.amplitudes(), op, tm);
}

void apply_unitary(DensityMatrix& rho, const Matrix& op,
                   const std::vector<QubitIndex>& targets) {
  TargetMap tm(targets, rho.n_qubits());
  check_small_op(op, tm.k);
  rho.matrix() = conjugate_on_targets(rho.matrix(), op, tm);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitIndex>& keep) {
  TargetMap tm(keep, rho.n_qubits());
  auto rests = rest_patterns(tm);
  std::size_t sub_dim = dim_for(tm.k);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(sub_dim),
                            static_cast<Eigen::Index>(sub_dim));
  for (std::size_t i = 0; i < sub_dim; ++i)
    for (std::size_t j = 0; j < sub_dim; ++j) {
      Complex acc = 0;
      for (std::size_t rest : rests)
        acc += rho.matrix()(static_cast<Eigen::Index>(rest | tm.scatter(i)),
                            static_cast<Eigen::Index>(rest | tm.scatter(j)));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return DensityMatrix(tm.k, std::move(out));
}

std::vector<MeasurementBranch> measure_projective(
    const StateVector& state, const std::vector<QubitIndex>& targets,
    const std::vector<StateVector>& basis) {
  TargetMap tm(targets, state.n_qubits());
  check_basis(basis, tm.k);
  auto rests = rest_patterns(tm);
  std::size_t sub_dim = dim_for(tm.k);

  std::vector<MeasurementBranch> branches;
  branches.reserve(basis.size());
  for (std::size_t o = 0; o < basis.size(); ++o) {
    const Vector& b = basis[o].amplitudes();
    Vector collapsed = Vector::Zero(static_cast<Eigen::Index>(state.dim()));
    double prob = 0.0;
    for (std::size_t rest : rests) {
      Complex c = 0;
      for (std::size_t t = 0; t < sub_dim; ++t)
        c += std::conj(b(static_cast<Eigen::Index>(t))) *
             state.amp(rest | tm.scatter(t));
      prob += std::norm(c);
      for (std::size_t t = 0; t < sub_dim; ++t)
        collapsed(static_cast<Eigen::Index>(rest | tm.scatter(t))) =
            b(static_cast<Eigen::Index>(t)) * c;
    }
    if (prob > kBranchZero) collapsed /= std::sqrt(prob);
    branches.push_back({o, prob,
                        StateVector(state.n_qubits(), std::move(collapsed),
                                    prob > kBranchZero ? 1.0 : 0.0)});
  }
  return branches;
}

std::vector<MeasurementBranchDM> measure_projective(
    const DensityMatrix& rho, const std::vector<QubitIndex>& targets,
    const std::vector<StateVector>& basis) {
  TargetMap tm(targets, rho.n_qubits());
  check_basis(basis, tm.k);

  std::vector<MeasurementBranchDM> branches;
  branches.reserve(basis.size());
  for (std::size_t o = 0; o < basis.size(); ++o) {
    Matrix proj = basis[o].amplitudes() * basis[o].amplitudes().adjoint();
    Matrix collapsed = conjugate_on_targets(rho.matrix(), proj, tm);
    double prob = collapsed.trace().real();
    if (prob > kBranchZero)
      collapsed /= prob;
    else
      collapsed.setZero();
    branches.push_back({o, std::max(prob, 0.0),
                        DensityMatrix(rho.n_qubits(), std::move(collapsed))});
  }
  return branches;
}

DensityMatrix apply_kraus(const DensityMatrix& rho,
                          const std::vector<Matrix>& kraus, QubitIndex target) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
  TargetMap tm({target}, rho.n_qubits());
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const Matrix& k : kraus) {
    check_small_op(k, 1);
    out += conjugate_on_targets(rho.matrix(), k, tm);
  }
  return DensityMatrix(rho.n_qubits(), std::move(out));
}

Matrix hermitian_sqrt(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_sqrt: not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw std::invalid_argument("hermitian_sqrt: not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_sqrt: eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kStructuralTol)
      throw std::invalid_argument("hermitian_sqrt: matrix is not PSD");
    ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qcast
