// SPDX-License-Identifier: MIT
#include "qcast/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qcast/gates.hpp"
#include "qcast/metrics.hpp"
#include "qcast/tensor_ops.hpp"

namespace qcast {

namespace {

constexpr double kDeadBranch = 1e-14;

const PartyId kSender1{Role::Sender, 1};
const PartyId kSender2{Role::Sender, 2};
const PartyId kController{Role::Controller, 1};

PartyId receiver(int i) { return {Role::Receiver, i}; }

std::string bits_label(std::size_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j)
    if ((value >> (width - 1 - j)) & 1u) s[j] = '1';
  return s;
}

// Candidate corrections, searched in this order; first hit wins. "ZX" covers
// the Y orbit up to phase, so this spans the single-qubit Pauli group.
const std::vector<std::string> kPauliCandidates = {"I", "X", "Z", "ZX"};

std::optional<std::string> find_pauli_correction(const DensityMatrix& got,
                                                 const StateVector& target) {
  for (const auto& cand : kPauliCandidates) {
    DensityMatrix fixed = got;
    if (cand != "I") apply_unitary(fixed, gates::pauli_string(cand), {0});
    if (std::abs(fidelity_pure(target, fixed) - 1.0) <= kEqualityTol) return cand;
  }
  return std::nullopt;
}

// One receiver's share of a protocol run: every branch of the sender-side
// measurement with the correction already applied to the receiver state.
struct LinkBranch {
  std::string label;
  double probability = 0.0;
  std::vector<ClassicalMessage> messages;
  std::string pauli;  // "" when no correction applies
  int cite = -1;      // message triggering the correction
  DensityMatrix receiver_state;
  bool success = true;
};

struct Link {
  PartyId receiver;
  std::vector<LinkBranch> branches;
};

struct LinkSetup {
  DensityMatrix actual;                  // possibly noisy
  std::optional<DensityMatrix> ideal;    // set only when actual is noisy
  std::vector<QubitIndex> measured;
  std::vector<StateVector> basis;
  QubitIndex receiver_qubit;
  StateVector target;                    // 1-qubit ket the receiver should end in
};

std::vector<LinkBranch> enumerate_link(const LinkSetup& setup) {
  auto actual = measure_projective(setup.actual, setup.measured, setup.basis);
  auto ideal = setup.ideal
                   ? measure_projective(*setup.ideal, setup.measured, setup.basis)
                   : actual;
  std::size_t width = setup.measured.size();

  std::vector<LinkBranch> out;
  out.reserve(actual.size());
  for (std::size_t o = 0; o < actual.size(); ++o) {
    LinkBranch lb;
    lb.label = bits_label(o, width);
    lb.probability = actual[o].probability;
    if (ideal[o].probability <= kDeadBranch) {
      lb.receiver_state = partial_trace(actual[o].state, {setup.receiver_qubit});
      lb.success = false;
      out.push_back(std::move(lb));
      continue;
    }
    DensityMatrix ideal_marginal =
        partial_trace(ideal[o].state, {setup.receiver_qubit});
    DensityMatrix marginal = partial_trace(actual[o].state, {setup.receiver_qubit});
    auto pauli = find_pauli_correction(ideal_marginal, setup.target);
    if (pauli) {
      if (*pauli != "I") apply_unitary(marginal, gates::pauli_string(*pauli), {0});
      lb.pauli = *pauli;
      lb.success = true;
    } else {
      lb.success = false;
    }
    lb.receiver_state = std::move(marginal);
    out.push_back(std::move(lb));
  }
  return out;
}

// Product-combines independent per-receiver links into one transcript.
Transcript combine_links(std::string protocol, const std::vector<Link>& links) {
  Transcript t;
  t.protocol = std::move(protocol);
  std::vector<std::size_t> idx(links.size(), 0);
  while (true) {
    Branch br;
    br.probability = 1.0;
    for (std::size_t k = 0; k < links.size(); ++k) {
      const LinkBranch& lb = links[k].branches[idx[k]];
      br.outcomes.push_back(lb.label);
      br.probability *= lb.probability;
      int base = static_cast<int>(br.messages.size());
      br.messages.insert(br.messages.end(), lb.messages.begin(), lb.messages.end());
      if (!lb.pauli.empty() && lb.pauli != "I")
        br.corrections.push_back({links[k].receiver, lb.pauli, base + lb.cite});
      br.receiver_states[links[k].receiver.index] = lb.receiver_state;
      br.success = br.success && lb.success;
    }
    if (br.success) t.success_probability += br.probability;
    t.branches.push_back(std::move(br));

    std::size_t k = links.size();
    while (k > 0) {
      --k;
      if (++idx[k] < links[k].branches.size()) break;
      idx[k] = 0;
      if (k == 0) return t;
    }
    if (links.empty()) return t;
  }
}

std::vector<StateVector> rsp_measurement_basis(const Complex& alpha,
                                               const Complex& beta) {
  StateVector u0 = StateVector::single(std::conj(alpha), std::conj(beta));
  StateVector u1 = StateVector::single(beta, -alpha);
  return {u0, u1};
}

std::vector<StateVector> bell_basis() {
  return {bell(BellKind::PhiPlus), bell(BellKind::PsiPlus), bell(BellKind::PhiMinus),
          bell(BellKind::PsiMinus)};
}

std::vector<StateVector> plus_minus_basis(double phase) {
  // (|0> + e^{i phase}|1>)/sqrt(2) and its orthogonal partner
  double s = 1.0 / std::sqrt(2.0);
  Complex e = std::polar(s, phase);
  return {StateVector::single(s, e), StateVector::single(s, -e)};
}

// Channel-pair preparation under the requested noise; qubit 0 sender side,
// qubit 1 receiver side.
DensityMatrix pair_under_noise(const StateVector& pair, const NoiseSpec* noise) {
  if (!noise) return DensityMatrix::pure(pair);
  if (noise->mode == NoiseMode::TransmittedQubit)
    return apply_channel(DensityMatrix::pure(pair), noise->channel, 1);
  // PerGate applies to the fixed two-gate Bell preparation; a non-Bell pair
  // (probabilistic links) falls back to transmission noise on the sent qubit.
  if (approx_equal(pair.amplitudes(), bell(BellKind::PhiPlus).amplitudes(),
                   kStructuralTol))
    return inject(Circuit{2, {{GateKind::H, {0}}, {GateKind::CNOT, {0, 1}}}}, *noise);
  return apply_channel(DensityMatrix::pure(pair), noise->channel, 1);
}

Link rsp_link(const KnownQubit& target, int receiver_index, const NoiseSpec* noise) {
  StateVector pair = bell(BellKind::PhiPlus);
  LinkSetup setup;
  setup.actual = pair_under_noise(pair, noise);
  if (noise) setup.ideal = DensityMatrix::pure(pair);
  setup.measured = {0};
  setup.basis = rsp_measurement_basis(target.alpha(), target.beta());
  setup.receiver_qubit = 1;
  setup.target = target.ket();

  Link link{receiver(receiver_index), enumerate_link(setup)};
  for (LinkBranch& lb : link.branches) {
    lb.messages = {{kSender1, link.receiver, lb.label}};
    lb.cite = 0;
  }
  return link;
}

Link teleport_link(const StateVector& message, int receiver_index,
                   const NoiseSpec* noise) {
  StateVector pair = bell(BellKind::PhiPlus);
  DensityMatrix pair_actual = pair_under_noise(pair, noise);
  DensityMatrix msg = DensityMatrix::pure(message);

  LinkSetup setup;
  setup.actual = tensor(msg, pair_actual);
  if (noise) setup.ideal = tensor(msg, DensityMatrix::pure(pair));
  setup.measured = {0, 1};
  setup.basis = bell_basis();
  setup.receiver_qubit = 2;
  setup.target = message;

  Link link{receiver(receiver_index), enumerate_link(setup)};
  for (LinkBranch& lb : link.branches) {
    lb.messages = {{kSender1, link.receiver, lb.label}};
    lb.cite = 0;
  }
  return link;
}

}  // namespace

std::string to_string(StateClass c) {
  switch (c) {
    case StateClass::RealPolar: return "real-polar";
    case StateClass::Equatorial: return "equatorial";
    case StateClass::General: return "general";
  }
  throw std::invalid_argument("unknown state class");
}

StateClass state_class_from_string(const std::string& s) {
  if (s == "real-polar") return StateClass::RealPolar;
  if (s == "equatorial") return StateClass::Equatorial;
  if (s == "general") return StateClass::General;
  throw std::invalid_argument("unknown state class: " + s);
}

std::string to_string(RspMode m) { return m == RspMode::Rsp ? "rsp" : "teleport"; }

KnownQubit KnownQubit::equatorial(double phi) {
  return {StateClass::Equatorial, std::numbers::pi / 4.0, phi};
}

std::vector<StateVector> yan_basis(double a, double b) {
  if (std::abs(a * a + b * b - 1.0) > kEqualityTol)
    throw std::invalid_argument("yan_basis: coefficients must satisfy a^2 + b^2 = 1");
  auto mk = [](double c0, double c1, double c2, double c3) {
    Vector v(4);
    v << c0, c1, c2, c3;
    return StateVector(2, std::move(v));
  };
  return {mk(a * a, a * b, a * b, -b * b), mk(a * b, -a * a, b * b, a * b),
          mk(a * b, b * b, -a * a, a * b), mk(b * b, -a * b, -a * b, -a * a)};
}

void Transcript::validate() const {
  if (!branches.empty()) {
    double total = 0.0;
    for (const Branch& b : branches) {
      total += b.probability;
      if (b.probability < -kEqualityTol)
        throw std::invalid_argument("Transcript: negative branch probability");
      for (const Correction& c : b.corrections)
        if (c.message_index < 0 ||
            c.message_index >= static_cast<int>(b.messages.size()))
          throw std::invalid_argument(
              "Transcript: correction does not cite a branch message");
    }
    if (std::abs(total - 1.0) > kEqualityTol)
      throw std::invalid_argument("Transcript: branch probabilities do not sum to 1");
  }
  for (const Transcript& d : directions) d.validate();
}

Transcript run_cluster_broadcast(const KnownQubit& target, const NoiseSpec* noise,
                                 ClusterVariant variant) {
  double a = std::cos(target.theta), b = std::sin(target.theta);
  std::vector<StateVector> basis;
  StateVector channel_state;
  if (variant == ClusterVariant::Yan) {
    if (target.cls != StateClass::RealPolar)
      throw std::invalid_argument("cluster broadcast requires a RealPolar target");
    channel_state = cluster_yan();
    basis = yan_basis(a, b);
  } else {
    bool is_plus = (target.cls == StateClass::RealPolar ||
                    target.cls == StateClass::Equatorial) &&
                   std::abs(a - b) <= kEqualityTol && std::abs(target.phi) <= kEqualityTol;
    if (!is_plus)
      throw std::invalid_argument("plus-variant cluster broadcast is fixed to |+>");
    channel_state = cluster_plus();
    auto pm = plus_minus_basis(0.0);
    basis = {tensor(pm[0], pm[0]), tensor(pm[0], pm[1]), tensor(pm[1], pm[0]),
             tensor(pm[1], pm[1])};
  }

  DensityMatrix ideal = DensityMatrix::pure(channel_state);
  DensityMatrix actual = ideal;
  if (noise) {
    if (noise->mode == NoiseMode::TransmittedQubit) {
      actual = apply_channel(actual, noise->channel, 2);
      actual = apply_channel(actual, noise->channel, 3);
    } else {
      actual = inject(variant == ClusterVariant::Yan ? cluster_prep()
                                                     : cluster_plus_prep(),
                      *noise);
      // the measurement-basis rotation itself is taken as noiseless
    }
  }

  auto actual_branches = measure_projective(actual, {0, 1}, basis);
  auto ideal_branches =
      noise ? measure_projective(ideal, {0, 1}, basis) : actual_branches;

  Transcript t;
  t.protocol = variant == ClusterVariant::Yan ? "cluster" : "cluster-plus";
  t.channel_qubits = 4;
  t.cbits_per_receiver = 2;
  StateVector ket = target.ket();
  for (std::size_t o = 0; o < actual_branches.size(); ++o) {
    Branch br;
    br.outcomes = {bits_label(o, 2)};
    br.probability = actual_branches[o].probability;
    br.messages = {{kSender1, receiver(1), br.outcomes[0]},
                   {kSender1, receiver(2), br.outcomes[0]}};
    for (int r = 1; r <= 2; ++r) {
      QubitIndex q = r == 1 ? 2 : 3;
      DensityMatrix ideal_marginal = partial_trace(ideal_branches[o].state, {q});
      DensityMatrix marginal = partial_trace(actual_branches[o].state, {q});
      auto pauli = find_pauli_correction(ideal_marginal, ket);
      if (!pauli) {
        br.success = false;
      } else if (*pauli != "I") {
        apply_unitary(marginal, gates::pauli_string(*pauli), {0});
        br.corrections.push_back({receiver(r), *pauli, r - 1});
      }
      br.receiver_states[r] = std::move(marginal);
    }
    if (br.success) t.success_probability += br.probability;
    t.branches.push_back(std::move(br));
  }
  return t;
}

Transcript run_bell_rsp_broadcast(const KnownQubit& target, int m, RspMode mode,
                                  const NoiseSpec* noise) {
  if (m < 1) throw std::invalid_argument("run_bell_rsp_broadcast: need m >= 1");
  std::vector<Link> links;
  links.reserve(m);
  for (int r = 1; r <= m; ++r)
    links.push_back(mode == RspMode::Rsp ? rsp_link(target, r, noise)
                                         : teleport_link(target.ket(), r, noise));
  Transcript t = combine_links("bell-rsp", links);
  t.bell_pairs = m;
  t.channel_qubits = 2 * m;
  t.cbits_per_receiver = mode == RspMode::Rsp ? 1 : 2;
  t.notes["mode"] = to_string(mode);
  return t;
}

Transcript run_probabilistic_broadcast(
    const KnownQubit& target, const std::vector<std::pair<double, Complex>>& links_ab,
    const NoiseSpec* noise) {
  if (links_ab.empty())
    throw std::invalid_argument("run_probabilistic_broadcast: no links");
  Complex alpha = target.alpha(), beta = target.beta();

  std::vector<Link> links;
  for (std::size_t k = 0; k < links_ab.size(); ++k) {
    auto [a, b] = links_ab[k];
    if (!(a >= std::abs(b)))
      throw std::invalid_argument("run_probabilistic_broadcast: need a >= |b| > 0");
    StateVector pair = nonmax_bell(a, b);  // rejects a == 0 or b == 0

    // Measurement adapted to both link and target: the first branch leaves
    // the receiver exactly in the target state.
    Complex u0 = std::conj(alpha) / a;
    Complex u1 = std::conj(beta) / std::conj(b);
    double n = std::sqrt(std::norm(u0) + std::norm(u1));
    StateVector m0 = StateVector::single(u0 / n, u1 / n);
    StateVector m1 = StateVector::single(-std::conj(m0.amp(1)), std::conj(m0.amp(0)));

    LinkSetup setup;
    setup.actual = pair_under_noise(pair, noise);
    if (noise) setup.ideal = DensityMatrix::pure(pair);
    setup.measured = {0};
    setup.basis = {m0, m1};
    setup.receiver_qubit = 1;
    setup.target = target.ket();

    Link link{receiver(static_cast<int>(k) + 1), enumerate_link(setup)};
    for (LinkBranch& lb : link.branches) {
      lb.messages = {{kSender1, link.receiver, lb.label}};
      lb.cite = 0;
    }
    links.push_back(std::move(link));
  }

  Transcript t = combine_links("probabilistic", links);
  t.bell_pairs = static_cast<int>(links_ab.size());
  t.channel_qubits = 2 * static_cast<int>(links_ab.size());
  t.cbits_per_receiver = 1;
  t.notes["links"] = "non-maximal";
  return t;
}

Transcript run_joint_broadcast(double theta, double phi, int m, bool adaptive,
                               const NoiseSpec* noise) {
  if (m < 1) throw std::invalid_argument("run_joint_broadcast: need m >= 1");
  StateVector target = KnownQubit::general(theta, phi).ket();
  auto a1_basis = rsp_measurement_basis(std::cos(theta), std::sin(theta));

  DensityMatrix part_ideal = DensityMatrix::pure(ghz(3));
  DensityMatrix part_actual = part_ideal;
  if (noise) {
    if (noise->mode == NoiseMode::TransmittedQubit) {
      part_actual = apply_channel(part_actual, noise->channel, 2);
    } else {
      part_actual = inject(
          Circuit{3, {{GateKind::H, {0}}, {GateKind::CNOT, {0, 1}}, {GateKind::CNOT, {0, 2}}}},
          *noise);
    }
  }

  std::vector<Link> links;
  for (int r = 1; r <= m; ++r) {
    Link link{receiver(r), {}};
    auto first = measure_projective(part_actual, {0}, a1_basis);
    auto first_ideal = noise ? measure_projective(part_ideal, {0}, a1_basis) : first;
    for (std::size_t o1 = 0; o1 < first.size(); ++o1) {
      // Sender 2 encodes -phi, flipping the sign when Sender 1 announced 1.
      double basis_phase = (adaptive && o1 == 1) ? phi : -phi;
      auto a2_basis = plus_minus_basis(basis_phase);
      auto second = measure_projective(first[o1].state, {1}, a2_basis);
      auto second_ideal =
          noise ? measure_projective(first_ideal[o1].state, {1}, a2_basis) : second;
      for (std::size_t o2 = 0; o2 < second.size(); ++o2) {
        LinkBranch lb;
        lb.label = bits_label(o1, 1) + bits_label(o2, 1);
        lb.probability = first[o1].probability * second[o2].probability;
        lb.messages = {{kSender1, kSender2, bits_label(o1, 1)},
                       {kSender1, link.receiver, bits_label(o1, 1)},
                       {kSender2, link.receiver, bits_label(o2, 1)}};
        lb.cite = 2;
        double p_ideal = first_ideal[o1].probability * second_ideal[o2].probability;
        DensityMatrix marginal = partial_trace(second[o2].state, {2});
        if (p_ideal <= kDeadBranch) {
          lb.success = false;
          lb.receiver_state = std::move(marginal);
          link.branches.push_back(std::move(lb));
          continue;
        }
        DensityMatrix ideal_marginal = partial_trace(second_ideal[o2].state, {2});
        auto pauli = find_pauli_correction(ideal_marginal, target);
        if (pauli) {
          if (*pauli != "I") apply_unitary(marginal, gates::pauli_string(*pauli), {0});
          lb.pauli = *pauli;
        } else {
          lb.success = false;
        }
        lb.receiver_state = std::move(marginal);
        link.branches.push_back(std::move(lb));
      }
    }
    links.push_back(std::move(link));
  }

  Transcript t = combine_links("joint", links);
  t.channel_qubits = 3 * m;
  t.cbits_per_receiver = 2;
  t.notes["parts"] = "ghz";
  t.notes["adaptive"] = adaptive ? "true" : "false";
  return t;
}

Transcript run_phase_chain(double theta, const std::vector<double>& phases, int m,
                           const NoiseSpec* noise) {
  if (phases.empty())
    throw std::invalid_argument("run_phase_chain: need at least one phase (n >= 2)");
  if (m < 1) throw std::invalid_argument("run_phase_chain: need m >= 1");

  StateVector message = KnownQubit::real_polar(theta).ket();
  double total = 0.0;
  for (double p : phases) {
    apply_unitary(message, gates::P(p), {0});
    total += p;
  }

  std::vector<Link> links;
  links.reserve(m);
  for (int r = 1; r <= m; ++r) links.push_back(teleport_link(message, r, noise));

  Transcript t = combine_links("phase-chain", links);
  t.bell_pairs = m;
  t.channel_qubits = 2 * m;
  t.cbits_per_receiver = 2;
  t.notes["senders"] = std::to_string(phases.size() + 1);
  std::ostringstream acc;
  acc << total;
  t.notes["accumulated_phase"] = acc.str();
  return t;
}

namespace {

// Bell frame f as a receiver-side Pauli: |link_f> = (I x P_f)|Phi+>.
const std::array<const char*, 4> kFramePauli = {"I", "X", "Z", "ZX"};

StateVector framed_bell(int f) {
  StateVector pair = bell(BellKind::PhiPlus);
  if (f != 0) apply_unitary(pair, gates::pauli_string(kFramePauli[f]), {1});
  return pair;
}

}  // namespace

Transcript run_controlled_broadcast(const KnownQubit& target, int m, bool disclose,
                                    std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("run_controlled_broadcast: need m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> draw(0, 3);
  std::vector<int> frames(m);
  for (int& f : frames) f = draw(rng);

  bool teleport = target.cls == StateClass::General;
  StateVector ket = target.ket();

  std::vector<Link> links;
  for (int r = 1; r <= m; ++r) {
    int f = frames[r - 1];
    auto setup_for = [&](int frame) {
      LinkSetup setup;
      StateVector pair = framed_bell(frame);
      if (teleport) {
        setup.actual = tensor(DensityMatrix::pure(ket), DensityMatrix::pure(pair));
        setup.measured = {0, 1};
        setup.basis = bell_basis();
        setup.receiver_qubit = 2;
      } else {
        setup.actual = DensityMatrix::pure(pair);
        setup.measured = {0};
        setup.basis = rsp_measurement_basis(target.alpha(), target.beta());
        setup.receiver_qubit = 1;
      }
      setup.target = ket;
      return setup;
    };

    Link link{receiver(r), {}};
    if (disclose) {
      link.branches = enumerate_link(setup_for(f));
      for (LinkBranch& lb : link.branches) {
        lb.messages = {{kSender1, link.receiver, lb.label},
                       {kController, link.receiver, bits_label(f, 2)}};
        lb.cite = 1;  // compiled from the disclosed Bell identity
      }
    } else {
      // Enumerate the controller's four possible draws; the receiver's view
      // is the Bayes mixture over frames, which twirls to I/2.
      std::array<std::vector<LinkBranch>, 4> per_frame;
      for (int g = 0; g < 4; ++g) {
        LinkSetup setup = setup_for(g);
        auto branches = measure_projective(setup.actual, setup.measured, setup.basis);
        for (std::size_t o = 0; o < branches.size(); ++o) {
          LinkBranch lb;
          lb.label = bits_label(o, setup.measured.size());
          lb.probability = branches[o].probability;
          lb.receiver_state =
              partial_trace(branches[o].state, {setup.receiver_qubit});
          per_frame[g].push_back(std::move(lb));
        }
      }
      for (std::size_t o = 0; o < per_frame[0].size(); ++o) {
        LinkBranch lb;
        lb.label = per_frame[0][o].label;
        double prob = 0.0;
        Matrix mix = Matrix::Zero(2, 2);
        for (int g = 0; g < 4; ++g) {
          prob += 0.25 * per_frame[g][o].probability;
          mix += 0.25 * per_frame[g][o].probability *
                 per_frame[g][o].receiver_state.matrix();
        }
        lb.probability = prob;
        lb.receiver_state = DensityMatrix(1, prob > kDeadBranch ? Matrix(mix / prob)
                                                                : Matrix(Matrix::Zero(2, 2)));
        lb.messages = {{kSender1, link.receiver, lb.label}};
        lb.success = false;  // gated on the controller's disclosure
        link.branches.push_back(std::move(lb));
      }
    }
    links.push_back(std::move(link));
  }

  Transcript t = combine_links("controlled", links);
  t.seed = seed;
  t.bell_pairs = m;
  t.channel_qubits = 2 * m;
  t.cbits_per_receiver = (teleport ? 2 : 1) + (disclose ? 2 : 0);
  t.notes["disclosed"] = disclose ? "true" : "false";
  if (disclose) {
    std::string fs;
    for (int f : frames) fs += (fs.empty() ? "" : ",") + std::string(kFramePauli[f]);
    t.notes["frames"] = fs;
  }
  return t;
}

Transcript run_multidirectional(
    int n_parties, const std::map<std::pair<int, int>, KnownQubit>& targets,
    const NoiseSpec* noise) {
  if (n_parties < 2)
    throw std::invalid_argument("run_multidirectional: need at least 2 parties");
  auto pairs = ordered_pairs(static_cast<std::size_t>(n_parties));
  for (auto [i, j] : pairs)
    if (!targets.count({i, j}))
      throw std::invalid_argument("run_multidirectional: missing target for pair " +
                                  std::to_string(i) + "->" + std::to_string(j));

  Transcript t;
  t.protocol = "multidirectional";
  t.bell_pairs = static_cast<int>(pairs.size());
  t.channel_qubits = 2 * static_cast<int>(pairs.size());
  t.success_probability = 1.0;
  for (auto [i, j] : pairs) {
    const KnownQubit& target = targets.at({i, j});
    bool teleport = target.cls == StateClass::General;
    Link link = teleport ? teleport_link(target.ket(), j, noise)
                         : rsp_link(target, j, noise);
    for (LinkBranch& lb : link.branches)
      for (ClassicalMessage& msg : lb.messages) msg.from = {Role::Sender, i};
    Transcript sub = combine_links("multidirectional-link", {link});
    sub.bell_pairs = 1;
    sub.channel_qubits = 2;
    sub.cbits_per_receiver = teleport ? 2 : 1;
    sub.notes["direction"] =
        std::to_string(i) + "->" + std::to_string(j);
    t.success_probability *= sub.success_probability;
    t.cbits_per_receiver = std::max(t.cbits_per_receiver, sub.cbits_per_receiver);
    t.directions.push_back(std::move(sub));
  }
  return t;
}

CorrectionRule derive_corrections(const std::string& protocol, StateClass cls) {
  std::vector<KnownQubit> samples;
  switch (cls) {
    case StateClass::RealPolar:
      for (double th : {0.3, 0.7, 1.1, 2.0, 2.7})
        samples.push_back(KnownQubit::real_polar(th));
      break;
    case StateClass::Equatorial:
      for (double ph : {0.4, 1.1, 2.3, 3.9, 5.2})
        samples.push_back(KnownQubit::equatorial(ph));
      break;
    case StateClass::General:
      for (double th : {0.3, 0.8, 1.2})
        for (double ph : {0.9, 2.5})
          samples.push_back(KnownQubit::general(th, ph));
      break;
  }

  // Branch states per outcome label across all sampled targets.
  std::map<std::string, std::vector<std::pair<DensityMatrix, StateVector>>> cases;
  for (const KnownQubit& target : samples) {
    std::vector<Link> links;
    if (protocol == "bell-rsp") {
      links.push_back(rsp_link(target, 1, nullptr));
    } else if (protocol == "teleport") {
      links.push_back(teleport_link(target.ket(), 1, nullptr));
    } else if (protocol == "cluster" || protocol == "cluster-plus") {
      ClusterVariant variant =
          protocol == "cluster" ? ClusterVariant::Yan : ClusterVariant::Plus;
      KnownQubit t2 = variant == ClusterVariant::Plus
                          ? KnownQubit::real_polar(std::numbers::pi / 4.0)
                          : target;
      if (variant == ClusterVariant::Yan && cls != StateClass::RealPolar)
        throw std::invalid_argument("derive_corrections: cluster needs RealPolar");
      Transcript t = run_cluster_broadcast(t2, nullptr, variant);
      for (const Branch& b : t.branches)
        for (const auto& [r, state] : b.receiver_states) {
          // undo the applied correction to recover the raw branch state
          DensityMatrix raw = state;
          for (const Correction& c : b.corrections)
            if (c.party.index == r)
              apply_unitary(raw, gates::pauli_string(c.pauli).adjoint(), {0});
          cases[b.outcomes[0] + ":" + std::to_string(r)].push_back({raw, t2.ket()});
        }
      continue;
    } else {
      throw std::invalid_argument("derive_corrections: unknown protocol " + protocol);
    }
    for (const LinkBranch& lb : links[0].branches) {
      DensityMatrix raw = lb.receiver_state;
      if (!lb.pauli.empty() && lb.pauli != "I")
        apply_unitary(raw, gates::pauli_string(lb.pauli).adjoint(), {0});
      cases[lb.label].push_back({raw, target.ket()});
    }
  }

  CorrectionRule rule;
  for (const auto& [label, instances] : cases) {
    std::string found;
    for (const auto& cand : kPauliCandidates) {
      bool ok = true;
      for (const auto& [raw, ket] : instances) {
        DensityMatrix fixed = raw;
        if (cand != "I") apply_unitary(fixed, gates::pauli_string(cand), {0});
        if (std::abs(fidelity_pure(ket, fixed) - 1.0) > kEqualityTol) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = cand;
        break;
      }
    }
    if (found.empty())
      throw std::invalid_argument(
          "derive_corrections: no target-independent rule for outcome " + label);
    auto sep = label.find(':');
    if (sep == std::string::npos) {
      rule.by_outcome[label] = {found};
    } else {
      auto& row = rule.by_outcome[label.substr(0, sep)];
      std::size_t r = std::stoul(label.substr(sep + 1));
      if (row.size() < r) row.resize(r, "I");
      row[r - 1] = found;
    }
  }
  return rule;
}

}  // namespace qcast
