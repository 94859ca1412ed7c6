// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "qcast/state.hpp"

namespace qcast {

// Kronecker products; a's qubits become qubits 0..n_a-1 of the result.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

// Embeds a 2^k x 2^k operator acting on `targets` (in the given order) into
// the full 2^n x 2^n space, identity elsewhere. targets[0] corresponds to the
// most significant bit of the small operator's index.
Matrix embed_operator(const Matrix& op, const std::vector<QubitIndex>& targets,
                      std::size_t n_qubits);

// In-place application of a small unitary without materializing the embedding.
void apply_unitary(StateVector& state, const Matrix& op,
                   const std::vector<QubitIndex>& targets);
void apply_unitary(DensityMatrix& rho, const Matrix& op,
                   const std::vector<QubitIndex>& targets);

// Traces out every qubit not in `keep`; output qubit j is keep[j].
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitIndex>& keep);

struct MeasurementBranch {
  std::size_t outcome;   // index into the supplied basis
  double probability;
  StateVector state;     // full collapsed state, renormalized (zero if p == 0)
};

struct MeasurementBranchDM {
  std::size_t outcome;
  double probability;
  DensityMatrix state;
};

// Projective measurement of `targets` in an orthonormal basis of their
// 2^k-dimensional subspace (basis vectors are k-qubit StateVectors; exactly
// 2^k of them). Returns every branch; the measured qubits collapse onto the
// basis vector, so dimensions and qubit indices are preserved.
std::vector<MeasurementBranch> measure_projective(
    const StateVector& state, const std::vector<QubitIndex>& targets,
    const std::vector<StateVector>& basis);
std::vector<MeasurementBranchDM> measure_projective(
    const DensityMatrix& rho, const std::vector<QubitIndex>& targets,
    const std::vector<StateVector>& basis);

// rho -> sum_i K_i rho K_i^dag with single-qubit Kraus operators on `target`.
DensityMatrix apply_kraus(const DensityMatrix& rho,
                          const std::vector<Matrix>& kraus, QubitIndex target);

// Principal square root of a Hermitian PSD matrix via eigendecomposition.
// Eigenvalues in [-1e-10, 0) are clamped to 0; below that it throws.
Matrix hermitian_sqrt(const Matrix& m);

}  // namespace qcast
