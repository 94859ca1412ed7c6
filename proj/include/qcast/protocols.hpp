// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcast/channels.hpp"
#include "qcast/noise.hpp"
#include "qcast/state.hpp"

namespace qcast {

// The broadcastable state classes. RealPolar: cos(t)|0> + sin(t)|1>;
// Equatorial: (|0> + e^{i p}|1>)/sqrt(2); General: cos(t)|0> + e^{i p} sin(t)|1>.
enum class StateClass { RealPolar, Equatorial, General };

std::string to_string(StateClass c);
StateClass state_class_from_string(const std::string& s);

struct KnownQubit {
  StateClass cls;
  double theta;
  double phi;

  static KnownQubit real_polar(double theta) { return {StateClass::RealPolar, theta, 0.0}; }
  static KnownQubit equatorial(double phi);
  static KnownQubit general(double theta, double phi) { return {StateClass::General, theta, phi}; }

  Complex alpha() const { return {std::cos(theta), 0.0}; }
  Complex beta() const { return std::polar(std::sin(theta), phi); }
  StateVector ket() const { return StateVector::single(alpha(), beta()); }
  DensityMatrix density() const { return DensityMatrix::pure(ket()); }
};

// Eq.-style four-element measurement basis for the cluster broadcast;
// coefficients must be real with a^2 + b^2 = 1.
std::vector<StateVector> yan_basis(double a, double b);

struct ClassicalMessage {
  PartyId from;
  PartyId to;
  std::string bits;
};

struct Correction {
  PartyId party;
  std::string pauli;  // product of I,X,Y,Z applied right-to-left, e.g. "ZX"
  int message_index;  // which branch message triggered it
};

struct Branch {
  std::vector<std::string> outcomes;  // one label per measurement event
  double probability = 0.0;
  std::vector<ClassicalMessage> messages;
  std::vector<Correction> corrections;
  std::map<int, DensityMatrix> receiver_states;  // post-correction
  bool success = true;
};

struct Transcript {
  std::string protocol;
  std::vector<Branch> branches;
  double success_probability = 0.0;  // sum of success branch probabilities
  int bell_pairs = 0;
  int channel_qubits = 0;
  int cbits_per_receiver = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> notes;

  // Multidirectional runs factor into one independent transcript per ordered
  // direction; everything else leaves this empty.
  std::vector<Transcript> directions;

  // Branch probabilities sum to 1 within kEqualityTol; every correction cites
  // an existing message of its branch. Throws otherwise. Applies recursively
  // to directions.
  void validate() const;
};

enum class RspMode { Rsp, Teleport };
enum class ClusterVariant { Yan, Plus };

std::string to_string(RspMode m);

// Cluster-channel broadcast to two receivers. Yan variant: Eq.-(1)-style
// cluster measured in yan_basis (RealPolar targets only). Plus variant: the
// all-plus cluster measured in {|++>,...}, fixed to theta = pi/4.
Transcript run_cluster_broadcast(const KnownQubit& target,
                                 const NoiseSpec* noise = nullptr,
                                 ClusterVariant variant = ClusterVariant::Yan);

// One Bell pair per receiver. Rsp mode costs 1 cbit/receiver and is
// deterministic for RealPolar and Equatorial targets; General targets run the
// probabilistic filter (success 1/2 per link). Teleport mode costs 2
// cbits/receiver and handles every class deterministically.
Transcript run_bell_rsp_broadcast(const KnownQubit& target, int m, RspMode mode,
                                  const NoiseSpec* noise = nullptr);

// Non-maximal links a|00> + b|11>, one per receiver. Success branches leave
// the receiver exactly in the target; aggregate success is the product of
// per-link success probabilities.
Transcript run_probabilistic_broadcast(
    const KnownQubit& target, const std::vector<std::pair<double, Complex>>& links,
    const NoiseSpec* noise = nullptr);

// Two senders share GHZ triples with each receiver: Sender 1 knows theta,
// Sender 2 knows phi and (when adaptive) flips the sign of the encoded phase
// on Sender 1's outcome 1, which makes the protocol deterministic.
Transcript run_joint_broadcast(double theta, double phi, int m, bool adaptive = true,
                               const NoiseSpec* noise = nullptr);

// Chain of senders: Sender 1 prepares cos(t)|0> + sin(t)|1>, senders 2..n
// apply P(phi_j) in turn, Sender n broadcasts (teleport mode) to m receivers.
Transcript run_phase_chain(double theta, const std::vector<double>& phases, int m,
                           const NoiseSpec* noise = nullptr);

// Controller secretly draws one of the four Bell states per link (seeded).
// Without disclosure every receiver is left at I/2 exactly (enumerated over
// the four choices); with disclosure Pauli-frame corrections restore the
// target in every branch.
Transcript run_controlled_broadcast(const KnownQubit& target, int m, bool disclose,
                                    std::uint64_t seed);

// n(n-1) directions; key (i, j) broadcasts targets.at({i,j}) from party i to
// party j via an independent Bell-pair RSP (teleport for General targets).
Transcript run_multidirectional(
    int n_parties, const std::map<std::pair<int, int>, KnownQubit>& targets,
    const NoiseSpec* noise = nullptr);

struct CorrectionRule {
  // outcome label -> one Pauli string per receiver
  std::map<std::string, std::vector<std::string>> by_outcome;
};

// Class-level correction table, derived by sampling targets of the class and
// intersecting the Pauli strings that fix every branch. protocol is one of
// "bell-rsp", "teleport", "cluster", "cluster-plus". Throws when no
// target-independent rule exists (e.g. General under rsp).
CorrectionRule derive_corrections(const std::string& protocol, StateClass cls);

}  // namespace qcast
