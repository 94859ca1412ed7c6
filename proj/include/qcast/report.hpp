// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcast/noise.hpp"
#include "qcast/protocols.hpp"

namespace qcast {

// Noise sweep over the two broadcast channels, comparing how faithfully each
// preparation circuit survives the injected noise.
struct SweepConfig {
  std::vector<NoiseKind> kinds = {NoiseKind::BitFlip, NoiseKind::Depolarizing,
                                  NoiseKind::AmplitudeDamping,
                                  NoiseKind::PhaseDamping};
  NoiseMode mode = NoiseMode::PerGate;
  double p_start = 0.05;
  double p_stop = 0.50;
  double p_step = 0.05;
  std::vector<std::string> channels = {"bell-pair", "cluster"};

  // 0 <= p_start <= p_stop <= 1, p_step > 0, known channel names. Throws.
  void validate() const;
  std::vector<double> grid() const;
};

struct SweepRow {
  std::string noise_type;
  std::string mode;
  double p;
  std::string channel;
  double fidelity;
};

// F(ideal, noisy) of the channel's preparation circuit: "bell-pair" is the
// two-Bell-pair prep, "cluster" the five-gate cluster prep. TransmittedQubit
// mode hits the receiver-bound halves ({1,3} resp. {2,3}).
double preparation_fidelity(const std::string& channel, NoiseKind kind,
                            NoiseMode mode, double p);

// Rows in deterministic order (noise kind, then p, then channel); grid points
// are evaluated concurrently. threads == 0 picks the hardware count.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

// Exact header `noise_type,mode,p,channel,fidelity`, 12 significant digits,
// '.' decimal separator, LF line endings.
std::string to_csv(const std::vector<SweepRow>& rows);

std::string format_sig12(double v);

// Branch sampling for the CLI's shot mode: outcome labels (branch outcomes
// concatenated) -> counts. Reproducible for a fixed seed on any platform.
std::map<std::string, std::uint64_t> sample_branches(const Transcript& t,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed);

// Exact branch distribution keyed like sample_branches.
std::map<std::string, double> branch_distribution(const Transcript& t);

}  // namespace qcast
