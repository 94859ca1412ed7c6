// SPDX-License-Identifier: MIT
#include "qcast/channels.hpp"

#include <cmath>

#include "qcast/tensor_ops.hpp"

namespace qcast {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Maximal entanglement test: every single-qubit marginal is I/2.
bool all_marginals_mixed(const StateVector& psi) {
  DensityMatrix rho = DensityMatrix::pure(psi);
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  for (QubitIndex q = 0; q < psi.n_qubits(); ++q) {
    DensityMatrix red = partial_trace(rho, {q});
    if (!approx_equal(red.matrix(), half, kStructuralTol)) return false;
  }
  return true;
}

void check_normalized(const StateVector& psi, const char* what) {
  if (std::abs(psi.norm() - 1.0) > kEqualityTol)
    throw std::invalid_argument(std::string(what) + ": state is not normalized");
}

}  // namespace

std::string to_string(const PartyId& p) {
  switch (p.role) {
    case Role::Sender: return "sender-" + std::to_string(p.index);
    case Role::Receiver: return "receiver-" + std::to_string(p.index);
    case Role::Controller: return "controller-" + std::to_string(p.index);
  }
  throw std::invalid_argument("unknown role");
}

BroadcastChannel::BroadcastChannel(std::vector<StateVector> factors,
                                   std::vector<PartyId> ownership, bool probabilistic)
    : factors_(std::move(factors)), ownership_(std::move(ownership)),
      probabilistic_(probabilistic) {
  std::size_t total = 0;
  for (const auto& f : factors_) total += f.n_qubits();
  if (total != ownership_.size())
    throw std::invalid_argument("BroadcastChannel: ownership size != total qubits");
}

std::vector<QubitIndex> BroadcastChannel::qubits_of(const PartyId& p) const {
  std::vector<QubitIndex> out;
  for (QubitIndex q = 0; q < ownership_.size(); ++q)
    if (ownership_[q] == p) out.push_back(q);
  return out;
}

StateVector BroadcastChannel::state() const {
  if (n_qubits() > kMaxMaterializeQubits)
    throw std::runtime_error("BroadcastChannel: refusing to materialize " +
                             std::to_string(n_qubits()) + " qubits");
  StateVector psi;
  for (const auto& f : factors_) psi = tensor(psi, f);
  return psi;
}

StateVector bell(BellKind kind) {
  Vector v = Vector::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    case BellKind::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case BellKind::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    case BellKind::PsiMinus: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
  }
  return StateVector(2, std::move(v));
}

StateVector nonmax_bell(double a, Complex b) {
  if (a <= 0.0 || std::abs(b) == 0.0)
    throw std::invalid_argument("nonmax_bell: coefficients must be nonzero");
  Vector v = Vector::Zero(4);
  v(0) = a;
  v(3) = b;
  StateVector psi(2, std::move(v));
  check_normalized(psi, "nonmax_bell");
  return psi;
}

StateVector ghz(std::size_t n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz: need at least 2 qubits");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_for(n_qubits)));
  v(0) = kInvSqrt2;
  v(v.size() - 1) = kInvSqrt2;
  return StateVector(n_qubits, std::move(v));
}

StateVector cluster_yan() {
  Vector v = Vector::Zero(16);
  v(0b0000) = 0.5;
  v(0b0101) = 0.5;
  v(0b1010) = 0.5;
  v(0b1111) = -0.5;
  return StateVector(4, std::move(v));
}

StateVector cluster_plus() {
  Vector v = Vector::Zero(16);
  v(0b0000) = 0.5;
  v(0b0101) = 0.5;
  v(0b1010) = 0.5;
  v(0b1111) = 0.5;
  return StateVector(4, std::move(v));
}

StateVector table1_row2() {
  Vector v = Vector::Zero(16);
  v(0b0001) = 0.5;
  v(0b0110) = 0.5;
  v(0b1011) = 0.5;
  v(0b1100) = 0.5;
  return StateVector(4, std::move(v));
}

BroadcastChannel channel_general(const std::vector<StateVector>& parts) {
  if (parts.empty()) throw std::invalid_argument("channel_general: no parts");
  std::vector<PartyId> ownership;
  bool probabilistic = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].n_qubits() != 2)
      throw std::invalid_argument("channel_general: parts must be two-qubit states");
    check_normalized(parts[i], "channel_general");
    if (!all_marginals_mixed(parts[i])) probabilistic = true;
    ownership.push_back({Role::Sender, 1});
    ownership.push_back({Role::Receiver, static_cast<int>(i) + 1});
  }
  return BroadcastChannel(parts, std::move(ownership), probabilistic);
}

BroadcastChannel channel_joint(const std::vector<StateVector>& parts) {
  if (parts.empty()) throw std::invalid_argument("channel_joint: no parts");
  std::vector<PartyId> ownership;
  bool probabilistic = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].n_qubits() != 3)
      throw std::invalid_argument("channel_joint: parts must be three-qubit states");
    check_normalized(parts[i], "channel_joint");
    if (!all_marginals_mixed(parts[i])) probabilistic = true;
    ownership.push_back({Role::Sender, 1});
    ownership.push_back({Role::Sender, 2});
    ownership.push_back({Role::Receiver, static_cast<int>(i) + 1});
  }
  return BroadcastChannel(parts, std::move(ownership), probabilistic);
}

BroadcastChannel channel_joint_ghz(std::size_t m) {
  if (m == 0) throw std::invalid_argument("channel_joint_ghz: need m >= 1");
  return channel_joint(std::vector<StateVector>(m, ghz(3)));
}

StateVector channel_controlled(const std::vector<StateVector>& chis) {
  std::size_t m = chis.size();
  if (m < 2) throw std::invalid_argument("channel_controlled: need at least 2 channels");
  std::size_t nq = chis[0].n_qubits();
  for (const auto& chi : chis) {
    if (chi.n_qubits() != nq)
      throw std::invalid_argument("channel_controlled: mixed qubit counts");
    check_normalized(chi, "channel_controlled");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Complex overlap = chis[i].amplitudes().adjoint() * chis[j].amplitudes();
      if (std::abs(overlap) > 1.0 - kStructuralTol)
        throw std::invalid_argument("channel_controlled: channels must be distinct");
    }

  std::size_t ancilla = 1;
  while (dim_for(ancilla) < m) ++ancilla;
  std::size_t total = nq + ancilla;
  if (total > BroadcastChannel::kMaxMaterializeQubits)
    throw std::invalid_argument("channel_controlled: state too large");

  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_for(total)));
  double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    StateVector term = tensor(chis[k], StateVector::basis(ancilla, k));
    out += scale * term.amplitudes();
  }
  return StateVector(total, std::move(out));
}

std::vector<std::pair<int, int>> ordered_pairs(std::size_t n_parties) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 1; i <= n_parties; ++i)
    for (std::size_t j = 1; j <= n_parties; ++j)
      if (i != j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return pairs;
}

BroadcastChannel channel_multidirectional(std::size_t n_parties) {
  if (n_parties < 2)
    throw std::invalid_argument("channel_multidirectional: need at least 2 parties");
  auto pairs = ordered_pairs(n_parties);
  std::vector<StateVector> factors(pairs.size(), bell(BellKind::PhiPlus));
  std::vector<PartyId> ownership;
  for (auto [i, j] : pairs) {
    // In a peer network every party both sends and receives; tag the pair's
    // first qubit with the sending side, second with the receiving side.
    ownership.push_back({Role::Sender, i});
    ownership.push_back({Role::Receiver, j});
  }
  return BroadcastChannel(std::move(factors), std::move(ownership));
}

}  // namespace qcast
