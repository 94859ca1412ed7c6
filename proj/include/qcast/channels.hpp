// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "qcast/state.hpp"

namespace qcast {

enum class Role { Sender, Receiver, Controller };

struct PartyId {
  Role role;
  int index;  // 1-based within the role

  bool operator==(const PartyId&) const = default;
};

std::string to_string(const PartyId& p);

// A multiparty entangled channel, stored as its tensor factors so large
// instances (e.g. ten Bell pairs, 20 qubits) never have to be materialized.
// Qubit q of the assembled state belongs to ownership[q].
class BroadcastChannel {
 public:
  BroadcastChannel(std::vector<StateVector> factors, std::vector<PartyId> ownership,
                   bool probabilistic = false);

  std::size_t n_qubits() const { return ownership_.size(); }
  const std::vector<StateVector>& factors() const { return factors_; }
  const std::vector<PartyId>& ownership() const { return ownership_; }
  PartyId owner(QubitIndex q) const { return ownership_.at(q); }
  std::vector<QubitIndex> qubits_of(const PartyId& p) const;
  bool probabilistic() const { return probabilistic_; }

  // Assembles the full state. Guarded: refuses above kMaxMaterializeQubits.
  static constexpr std::size_t kMaxMaterializeQubits = 16;
  StateVector state() const;

 private:
  std::vector<StateVector> factors_;
  std::vector<PartyId> ownership_;
  bool probabilistic_;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

StateVector bell(BellKind kind);
// a|00> + b|11>, a real and positive, |a|^2 + |b|^2 = 1 after construction
// checks; throws when a or b vanishes or normalization fails.
StateVector nonmax_bell(double a, Complex b);
StateVector ghz(std::size_t n_qubits = 3);

// (1/2)(|0000> + |0101> + |1010> - |1111>): the 4-qubit broadcast cluster.
StateVector cluster_yan();
// Same but with +|1111>; equals Phi+ x Phi+ on qubit pairs (0,2),(1,3).
StateVector cluster_plus();
// (1/2)(|0001> + |0110> + |1011> + |1100>), second catalogued 4-qubit channel.
StateVector table1_row2();

// m two-qubit parts; part i spans qubits (2i, 2i+1), sender keeps the even
// one, Receiver(i+1) gets the odd one.
BroadcastChannel channel_general(const std::vector<StateVector>& parts);

// m three-qubit parts (default GHZ); per part: Sender 1, Sender 2, Receiver(i+1).
BroadcastChannel channel_joint(const std::vector<StateVector>& parts);
BroadcastChannel channel_joint_ghz(std::size_t m);

// (1/sqrt(m)) sum_k |chi_k>|a_k>, ancilla = ceil(log2 m) qubits appended in
// the computational basis, owned by the controller. The chi_k must share a
// qubit count and be pairwise distinct (up to global phase).
StateVector channel_controlled(const std::vector<StateVector>& chis);

// n(n-1) Bell pairs, one per ordered pair (i,j), i != j, i broadcasting to j.
// Pair index p spans qubits (2p, 2p+1): sender side then receiver side.
BroadcastChannel channel_multidirectional(std::size_t n_parties);
// Ordered-pair order used for the channel above: (1,2),(1,3),...,(2,1),...
std::vector<std::pair<int, int>> ordered_pairs(std::size_t n_parties);

}  // namespace qcast
