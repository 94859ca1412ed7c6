// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "qcast/circuit.hpp"
#include "qcast/state.hpp"

namespace qcast {

enum class NoiseKind { BitFlip, Depolarizing, AmplitudeDamping, PhaseDamping };

std::string to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);

// Single-qubit Kraus channel. p is the error probability for bit flip
// (K1 = sqrt(p) X flips with probability p), the depolarizing strength for
// depolarizing (K0 = sqrt(1-3p/4) I), and the damping probability for the
// two damping channels.
struct NoiseChannel {
  NoiseKind kind;
  double p;
  std::vector<Matrix> kraus;

  static NoiseChannel bit_flip(double p);
  static NoiseChannel depolarizing(double p);
  static NoiseChannel amplitude_damping(double p);
  static NoiseChannel phase_damping(double p);
  static NoiseChannel make(NoiseKind kind, double p);
};

struct CompletenessReport {
  bool ok;
  double max_deviation;  // max |(sum K^dag K - I)_{ ij }|
};

// Checks sum_i K_i^dag K_i == I. Default tolerance 1e-12.
CompletenessReport validate_completeness(const std::vector<Matrix>& kraus,
                                         double tol = 1e-12);

enum class NoiseMode { TransmittedQubit, PerGate };

std::string to_string(NoiseMode m);
NoiseMode noise_mode_from_string(const std::string& s);

// TransmittedQubit hits each qubit in `qubits` once, after preparation;
// PerGate hits every qubit touched by each gate, right after that gate
// (a two-qubit gate is followed by independent noise on both qubits).
struct NoiseSpec {
  NoiseChannel channel;
  NoiseMode mode = NoiseMode::TransmittedQubit;
  std::vector<QubitIndex> qubits;  // TransmittedQubit scope; ignored for PerGate

  void validate() const;
};

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch,
                            QubitIndex target);

// Runs the preparation circuit with noise injected per `spec.mode` and
// returns the resulting mixed state.
DensityMatrix inject(const Circuit& prep, const NoiseSpec& spec);

}  // namespace qcast
