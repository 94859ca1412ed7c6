// SPDX-License-Identifier: MIT
#include "qcast/noise.hpp"

#include <cmath>

#include "qcast/gates.hpp"
#include "qcast/tensor_ops.hpp"

namespace qcast {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("noise parameter must lie in [0, 1]");
}

}  // namespace

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::BitFlip: return "bit-flip";
    case NoiseKind::Depolarizing: return "depolarizing";
    case NoiseKind::AmplitudeDamping: return "amplitude-damping";
    case NoiseKind::PhaseDamping: return "phase-damping";
  }
  throw std::invalid_argument("unknown noise kind");
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "bit-flip") return NoiseKind::BitFlip;
  if (s == "depolarizing") return NoiseKind::Depolarizing;
  if (s == "amplitude-damping") return NoiseKind::AmplitudeDamping;
  if (s == "phase-damping") return NoiseKind::PhaseDamping;
  throw std::invalid_argument("unknown noise kind: " + s);
}

std::string to_string(NoiseMode m) {
  return m == NoiseMode::TransmittedQubit ? "transmitted" : "per-gate";
}

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "transmitted") return NoiseMode::TransmittedQubit;
  if (s == "per-gate") return NoiseMode::PerGate;
  throw std::invalid_argument("unknown noise mode: " + s);
}

NoiseChannel NoiseChannel::bit_flip(double p) {
  check_probability(p);
  return {NoiseKind::BitFlip, p,
          {std::sqrt(1.0 - p) * gates::I2(), std::sqrt(p) * gates::X()}};
}

NoiseChannel NoiseChannel::depolarizing(double p) {
  check_probability(p);
  double s = std::sqrt(p) / 2.0;
  return {NoiseKind::Depolarizing, p,
          {std::sqrt(1.0 - 3.0 * p / 4.0) * gates::I2(), s * gates::X(),
           s * gates::Y(), s * gates::Z()}};
}

NoiseChannel NoiseChannel::amplitude_damping(double p) {
  check_probability(p);
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  k1(0, 1) = std::sqrt(p);
  return {NoiseKind::AmplitudeDamping, p, {k0, k1}};
}

NoiseChannel NoiseChannel::phase_damping(double p) {
  check_probability(p);
  Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
  k1(0, 0) = std::sqrt(p);
  k2(1, 1) = std::sqrt(p);
  return {NoiseKind::PhaseDamping, p,
          {std::sqrt(1.0 - p) * gates::I2(), k1, k2}};
}

NoiseChannel NoiseChannel::make(NoiseKind kind, double p) {
  switch (kind) {
    case NoiseKind::BitFlip: return bit_flip(p);
    case NoiseKind::Depolarizing: return depolarizing(p);
    case NoiseKind::AmplitudeDamping: return amplitude_damping(p);
    case NoiseKind::PhaseDamping: return phase_damping(p);
  }
  throw std::invalid_argument("unknown noise kind");
}

CompletenessReport validate_completeness(const std::vector<Matrix>& kraus,
                                         double tol) {
  if (kraus.empty()) return {false, 1.0};
  Matrix sum = Matrix::Zero(kraus[0].rows(), kraus[0].cols());
  for (const Matrix& k : kraus) {
    if (k.rows() != sum.rows() || k.cols() != sum.cols())
      throw std::invalid_argument("validate_completeness: mixed dimensions");
    sum += k.adjoint() * k;
  }
  double dev = (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

void NoiseSpec::validate() const {
  auto report = validate_completeness(channel.kraus);
  if (!report.ok)
    throw std::invalid_argument("NoiseSpec: Kraus operators are not complete");
  if (mode == NoiseMode::TransmittedQubit && qubits.empty())
    throw std::invalid_argument("NoiseSpec: TransmittedQubit mode needs a qubit set");
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch,
                            QubitIndex target) {
  return apply_kraus(rho, ch.kraus, target);
}

DensityMatrix inject(const Circuit& prep, const NoiseSpec& spec) {
  spec.validate();
  if (spec.mode == NoiseMode::TransmittedQubit) {
    DensityMatrix rho = run_density(prep);
    for (QubitIndex q : spec.qubits) rho = apply_channel(rho, spec.channel, q);
    return rho;
  }
  DensityMatrix rho = DensityMatrix::pure(StateVector::zero(prep.n_qubits));
  for (const Gate& g : prep.gates) {
    apply_unitary(rho, gate_matrix(g), g.qubits);
    for (QubitIndex q : g.qubits) rho = apply_channel(rho, spec.channel, q);
  }
  return rho;
}

}  // namespace qcast
