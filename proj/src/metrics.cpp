// SPDX-License-Identifier: MIT
#include "qcast/metrics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcast/protocols.hpp"
#include "qcast/tensor_ops.hpp"

namespace qcast {

namespace {

bool is_pure(const DensityMatrix& rho) {
  return std::abs((rho.matrix() * rho.matrix()).trace().real() - 1.0) <= kStructuralTol;
}

StateVector principal_ket(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  Eigen::Index top;
  es.eigenvalues().maxCoeff(&top);
  return StateVector(rho.n_qubits(), es.eigenvectors().col(top));
}

}  // namespace

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim())
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  Complex f = psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes();
  return f.real();
}

double uhlmann_fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  if (is_pure(sigma)) return fidelity_pure(principal_ket(sigma), rho);
  if (is_pure(rho)) return fidelity_pure(principal_ket(rho), sigma);
  // Trace-norm form F = ||sqrt(sigma) sqrt(rho)||_1^2. Singular values are
  // backward-stable where the nested-square-root form loses half the digits
  // near null eigenvalues.
  Matrix product = hermitian_sqrt(sigma.matrix()) * hermitian_sqrt(rho.matrix());
  Eigen::JacobiSVD<Matrix> svd(product);
  double tr = svd.singularValues().sum();
  return tr * tr;
}

std::uint64_t resource_count(std::uint64_t m, std::uint64_t n) {
  if (m < 2) throw std::invalid_argument("resource_count: need m >= 2");
  if (n < 1) throw std::invalid_argument("resource_count: need n >= 1");

  // m^n - 1 in exact arithmetic (base-2^32 limbs), then its bit length:
  // ceil(log2 x) == bit_length(x - 1) for x >= 2.
  std::vector<std::uint32_t> limbs{1};
  for (std::uint64_t i = 0; i < n; ++i) {
    unsigned __int128 carry = 0;
    for (std::uint32_t& limb : limbs) {
      unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    while (carry != 0) {
      limbs.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
      carry >>= 32;
    }
  }
  // subtract 1 (m^n >= 2, so no global borrow survives)
  for (std::uint32_t& limb : limbs) {
    if (limb != 0) {
      --limb;
      break;
    }
    limb = 0xffffffffu;
  }
  while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();

  std::uint64_t bits = (limbs.size() - 1) * std::uint64_t{32};
  bits += std::bit_width(limbs.back());
  return bits;
}

FidelityReport receiver_fidelities(const Transcript& t, const KnownQubit& target,
                                   bool success_only) {
  if (t.branches.empty())
    throw std::invalid_argument(
        "receiver_fidelities: transcript has no branches (multidirectional runs "
        "report per direction)");
  StateVector ket = target.ket();

  FidelityReport report;
  std::map<int, double> weight_sum;
  for (const Branch& b : t.branches) {
    bool selected = !success_only || b.success;
    for (const auto& [r, state] : b.receiver_states) {
      double f = fidelity_pure(ket, state);
      report.per_branch[r].push_back(f);
      if (selected) {
        report.weighted[r] += b.probability * f;
        weight_sum[r] += b.probability;
      }
    }
  }
  for (auto& [r, w] : report.weighted) {
    if (weight_sum[r] <= 0.0)
      throw std::invalid_argument("receiver_fidelities: no branch selected");
    w /= weight_sum[r];
  }
  return report;
}

}  // namespace qcast
