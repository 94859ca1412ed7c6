// SPDX-License-Identifier: MIT
//
// qcast: command-line front end for the broadcasting simulator.
// Subcommands: simulate, sweep, resources, export-qasm. Config may come from
// flags or a JSON file (--config); explicit flags win on conflict. Angles are
// given in units of pi (e.g. --theta 0.25 means pi/4).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcast/circuit.hpp"
#include "qcast/metrics.hpp"
#include "qcast/protocols.hpp"
#include "qcast/report.hpp"

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

// Applies a config value unless the flag was given explicitly.
template <typename T>
void config_override(const json& cfg, const std::string& key, const CLI::Option* opt,
                     T& var) {
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

qcast::KnownQubit make_target(const std::string& cls, double theta_pi, double phi_pi) {
  switch (qcast::state_class_from_string(cls)) {
    case qcast::StateClass::RealPolar:
      return qcast::KnownQubit::real_polar(theta_pi * kPi);
    case qcast::StateClass::Equatorial:
      return qcast::KnownQubit::equatorial(phi_pi * kPi);
    case qcast::StateClass::General:
      return qcast::KnownQubit::general(theta_pi * kPi, phi_pi * kPi);
  }
  throw std::invalid_argument("unreachable");
}

std::vector<std::pair<double, qcast::Complex>> parse_links(const std::string& s) {
  std::vector<std::pair<double, qcast::Complex>> links;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto sep = item.find(':');
    if (sep == std::string::npos)
      throw std::invalid_argument("links: expected a:b pairs, got " + item);
    links.emplace_back(std::stod(item.substr(0, sep)),
                       qcast::Complex(std::stod(item.substr(sep + 1)), 0.0));
  }
  return links;
}

std::vector<double> parse_phases_pi(const std::string& s) {
  std::vector<double> phases;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) phases.push_back(std::stod(item) * kPi);
  return phases;
}

json target_json(const qcast::KnownQubit& t) {
  return {{"class", qcast::to_string(t.cls)},
          {"theta_pi", t.theta / kPi},
          {"phi_pi", t.phi / kPi}};
}

json transcript_json(const qcast::Transcript& t, const qcast::KnownQubit& target) {
  json out;
  out["protocol"] = t.protocol;
  out["success_probability"] = t.success_probability;
  out["bell_pairs"] = t.bell_pairs;
  out["channel_qubits"] = t.channel_qubits;
  out["cbits_per_receiver"] = t.cbits_per_receiver;
  out["branch_count"] = t.branches.size();
  if (!t.notes.empty()) out["notes"] = t.notes;

  json branches = json::array();
  for (const qcast::Branch& b : t.branches) {
    json jb;
    jb["outcomes"] = b.outcomes;
    jb["probability"] = b.probability;
    jb["success"] = b.success;
    json msgs = json::array();
    for (const qcast::ClassicalMessage& m : b.messages)
      msgs.push_back({{"from", qcast::to_string(m.from)},
                      {"to", qcast::to_string(m.to)},
                      {"bits", m.bits}});
    jb["messages"] = msgs;
    json cors = json::array();
    for (const qcast::Correction& c : b.corrections)
      cors.push_back({{"party", qcast::to_string(c.party)},
                      {"pauli", c.pauli},
                      {"message_index", c.message_index}});
    jb["corrections"] = cors;
    json fids;
    qcast::StateVector ket = target.ket();
    for (const auto& [r, state] : b.receiver_states)
      fids[std::to_string(r)] = qcast::fidelity_pure(ket, state);
    jb["receiver_fidelity"] = fids;
    branches.push_back(std::move(jb));
  }
  out["branches"] = branches;
  return out;
}

struct SimulateArgs {
  std::string protocol;
  std::string cls = "real-polar";
  double theta_pi = 0.25;
  double phi_pi = 0.0;
  int receivers = 2;
  std::string mode = "rsp";
  std::string noise = "none";
  double noise_p = 0.0;
  std::string noise_mode = "transmitted";
  std::string links = "0.8:0.6";
  std::string phases = "0.5";
  bool disclose = false;
  bool adaptive = true;
  int parties = 3;
  std::uint64_t seed = 1;
  std::uint64_t shots = 0;
  std::string output;
  std::string config;
};

int cmd_simulate(const SimulateArgs& a) {
  auto started = std::chrono::steady_clock::now();

  std::optional<qcast::NoiseSpec> noise;
  if (a.noise != "none") {
    noise = qcast::NoiseSpec{
        qcast::NoiseChannel::make(qcast::noise_kind_from_string(a.noise), a.noise_p),
        qcast::noise_mode_from_string(a.noise_mode),
        {}};
  }
  const qcast::NoiseSpec* noise_ptr = noise ? &*noise : nullptr;

  qcast::Transcript t;
  qcast::KnownQubit target = make_target(a.cls, a.theta_pi, a.phi_pi);
  if (a.protocol == "bell-rsp" || a.protocol == "teleport") {
    qcast::RspMode mode = (a.protocol == "teleport" || a.mode == "teleport")
                              ? qcast::RspMode::Teleport
                              : qcast::RspMode::Rsp;
    t = qcast::run_bell_rsp_broadcast(target, a.receivers, mode, noise_ptr);
  } else if (a.protocol == "cluster") {
    t = qcast::run_cluster_broadcast(target, noise_ptr, qcast::ClusterVariant::Yan);
  } else if (a.protocol == "cluster-plus") {
    target = qcast::KnownQubit::real_polar(kPi / 4.0);
    t = qcast::run_cluster_broadcast(target, noise_ptr, qcast::ClusterVariant::Plus);
  } else if (a.protocol == "probabilistic") {
    t = qcast::run_probabilistic_broadcast(target, parse_links(a.links), noise_ptr);
  } else if (a.protocol == "joint") {
    target = qcast::KnownQubit::general(a.theta_pi * kPi, a.phi_pi * kPi);
    t = qcast::run_joint_broadcast(a.theta_pi * kPi, a.phi_pi * kPi, a.receivers,
                                   a.adaptive, noise_ptr);
  } else if (a.protocol == "phase-chain") {
    std::vector<double> phases = parse_phases_pi(a.phases);
    double total = 0.0;
    for (double p : phases) total += p;
    target = qcast::KnownQubit::general(a.theta_pi * kPi, total);
    t = qcast::run_phase_chain(a.theta_pi * kPi, phases, a.receivers, noise_ptr);
  } else if (a.protocol == "controlled") {
    t = qcast::run_controlled_broadcast(target, a.receivers, a.disclose, a.seed);
  } else if (a.protocol == "multidirectional") {
    std::map<std::pair<int, int>, qcast::KnownQubit> targets;
    for (auto [i, j] : qcast::ordered_pairs(static_cast<std::size_t>(a.parties)))
      targets.insert({{i, j}, target});
    t = qcast::run_multidirectional(a.parties, targets, noise_ptr);
  } else {
    throw std::invalid_argument("unknown protocol: " + a.protocol);
  }
  t.validate();

  json report;
  report["command"] = "simulate";
  report["protocol"] = a.protocol;
  report["target"] = target_json(target);
  report["seed"] = a.seed;
  if (noise)
    report["noise"] = {{"kind", qcast::to_string(noise->channel.kind)},
                       {"p", noise->channel.p},
                       {"mode", qcast::to_string(noise->mode)}};
  else
    report["noise"] = nullptr;

  if (t.directions.empty()) {
    report["transcript"] = transcript_json(t, target);
    qcast::FidelityReport fid = qcast::receiver_fidelities(t, target);
    json per;
    double avg = 0.0;
    for (const auto& [r, w] : fid.weighted) {
      per[std::to_string(r)] = w;
      avg += w;
    }
    report["fidelity"] = {{"per_receiver", per},
                          {"average", avg / static_cast<double>(fid.weighted.size())}};
  } else {
    json dirs = json::array();
    for (const qcast::Transcript& sub : t.directions) {
      json d = transcript_json(sub, target);
      d["direction"] = sub.notes.at("direction");
      dirs.push_back(std::move(d));
    }
    report["transcript"] = {{"protocol", t.protocol},
                            {"success_probability", t.success_probability},
                            {"bell_pairs", t.bell_pairs},
                            {"channel_qubits", t.channel_qubits},
                            {"directions", dirs}};
  }

  report["resources"] = {
      {"bell_pairs", t.bell_pairs},
      {"channel_qubits", t.channel_qubits},
      {"cbits_per_receiver", t.cbits_per_receiver},
      {"bell_pair_formula_2_m",
       qcast::resource_count(2, static_cast<std::uint64_t>(
                                    std::max(1, a.protocol == "multidirectional"
                                                    ? t.bell_pairs
                                                    : a.receivers)))}};

  if (a.shots > 0 && !t.branches.empty()) {
    report["shots"] = a.shots;
    json hist;
    for (const auto& [label, count] : qcast::sample_branches(t, a.shots, a.seed))
      hist[label] = count;
    report["histogram"] = hist;
    json exact;
    for (const auto& [label, p] : qcast::branch_distribution(t)) exact[label] = p;
    report["exact_distribution"] = exact;
  }

  write_output(a.output, report.dump(2) + "\n");
  auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);
  std::fprintf(stderr, "timing_ms=%.3f\n", elapsed.count());
  return 0;
}

struct SweepArgs {
  std::string noise = "all";
  std::string mode = "per-gate";
  double p_start = 0.05;
  double p_stop = 0.50;
  double p_step = 0.05;
  std::string channels = "both";
  unsigned threads = 0;
  std::string output;
  std::string config;
};

int cmd_sweep(const SweepArgs& a) {
  qcast::SweepConfig cfg;
  if (a.noise != "all") cfg.kinds = {qcast::noise_kind_from_string(a.noise)};
  cfg.mode = qcast::noise_mode_from_string(a.mode);
  cfg.p_start = a.p_start;
  cfg.p_stop = a.p_stop;
  cfg.p_step = a.p_step;
  if (a.channels != "both") cfg.channels = {a.channels};
  write_output(a.output, qcast::to_csv(qcast::run_sweep(cfg, a.threads)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcast: simulation toolkit for multiparty quantum-state broadcasting"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one broadcast protocol");
  auto* o_protocol = simulate->add_option("--protocol", sim.protocol,
                                          "bell-rsp|teleport|cluster|cluster-plus|"
                                          "probabilistic|joint|phase-chain|"
                                          "controlled|multidirectional");
  auto* o_class = simulate->add_option("--class", sim.cls,
                                       "real-polar|equatorial|general");
  auto* o_theta = simulate->add_option("--theta", sim.theta_pi, "theta in units of pi");
  auto* o_phi = simulate->add_option("--phi", sim.phi_pi, "phi in units of pi");
  auto* o_recv = simulate->add_option("--receivers", sim.receivers, "receiver count");
  auto* o_mode = simulate->add_option("--mode", sim.mode, "rsp|teleport");
  auto* o_noise = simulate->add_option("--noise", sim.noise,
                                       "none|bit-flip|depolarizing|amplitude-damping|"
                                       "phase-damping");
  auto* o_noise_p = simulate->add_option("--noise-p", sim.noise_p, "noise strength");
  auto* o_noise_mode = simulate->add_option("--noise-mode", sim.noise_mode,
                                            "transmitted|per-gate");
  auto* o_links = simulate->add_option("--links", sim.links,
                                       "probabilistic links, a:b comma-separated");
  auto* o_phases = simulate->add_option("--phases", sim.phases,
                                        "phase-chain phases in units of pi");
  auto* o_disclose = simulate->add_flag("--disclose", sim.disclose,
                                        "controlled: disclose the Bell identities");
  auto* o_adaptive = simulate->add_flag("--adaptive,!--no-adaptive", sim.adaptive,
                                        "joint: adapt Sender 2's basis");
  auto* o_parties = simulate->add_option("--parties", sim.parties,
                                         "multidirectional party count");
  auto* o_seed = simulate->add_option("--seed", sim.seed, "RNG seed");
  auto* o_shots = simulate->add_option("--shots", sim.shots,
                                       "shot-emulation count (0 = exhaustive only)");
  simulate->add_option("--output", sim.output, "output path (default stdout)");
  simulate->add_option("--config", sim.config, "JSON config file; flags win");

  // sweep
  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Noise sweep over both channels");
  auto* w_noise = sweep->add_option("--noise", sw.noise,
                                    "all|bit-flip|depolarizing|amplitude-damping|"
                                    "phase-damping");
  auto* w_mode = sweep->add_option("--mode", sw.mode, "transmitted|per-gate");
  auto* w_start = sweep->add_option("--p-start", sw.p_start, "grid start");
  auto* w_stop = sweep->add_option("--p-stop,--p-end", sw.p_stop, "grid stop");
  auto* w_step = sweep->add_option("--p-step", sw.p_step, "grid step");
  auto* w_channels = sweep->add_option("--channels", sw.channels,
                                       "both|bell-pair|cluster");
  auto* w_threads = sweep->add_option("--threads", sw.threads,
                                      "worker threads (0 = hardware)");
  sweep->add_option("--output", sw.output, "output path (default stdout)");
  sweep->add_option("--config", sw.config, "JSON config file; flags win");

  // resources
  std::uint64_t res_m = 2, res_n = 1;
  bool res_json = false;
  std::string res_output;
  CLI::App* resources = app.add_subcommand("resources",
                                           "Bell pairs replacing a broadcast channel");
  resources->add_option("--m", res_m, "coefficient count")->required();
  resources->add_option("--n", res_n, "receiver count")->required();
  resources->add_flag("--json", res_json, "emit JSON instead of the bare number");
  resources->add_option("--output", res_output, "output path (default stdout)");

  // export-qasm
  std::string qasm_id, qasm_output;
  CLI::App* exportq = app.add_subcommand("export-qasm",
                                         "Emit an OpenQASM 2.0 broadcast circuit");
  exportq->add_option("id", qasm_id, "fig1a|fig1b|fig3a|fig3b")->required();
  exportq->add_option("--output", qasm_output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      json cfg = load_config(sim.config);
      config_override(cfg, "protocol", o_protocol, sim.protocol);
      config_override(cfg, "class", o_class, sim.cls);
      config_override(cfg, "theta", o_theta, sim.theta_pi);
      config_override(cfg, "phi", o_phi, sim.phi_pi);
      config_override(cfg, "receivers", o_recv, sim.receivers);
      config_override(cfg, "mode", o_mode, sim.mode);
      config_override(cfg, "noise", o_noise, sim.noise);
      config_override(cfg, "noise-p", o_noise_p, sim.noise_p);
      config_override(cfg, "noise-mode", o_noise_mode, sim.noise_mode);
      config_override(cfg, "links", o_links, sim.links);
      config_override(cfg, "phases", o_phases, sim.phases);
      config_override(cfg, "disclose", o_disclose, sim.disclose);
      config_override(cfg, "adaptive", o_adaptive, sim.adaptive);
      config_override(cfg, "parties", o_parties, sim.parties);
      config_override(cfg, "seed", o_seed, sim.seed);
      config_override(cfg, "shots", o_shots, sim.shots);
      if (sim.protocol.empty())
        throw CLI::ValidationError("simulate", "--protocol is required");
      return cmd_simulate(sim);
    }
    if (*sweep) {
      json cfg = load_config(sw.config);
      config_override(cfg, "noise", w_noise, sw.noise);
      config_override(cfg, "mode", w_mode, sw.mode);
      config_override(cfg, "p-start", w_start, sw.p_start);
      config_override(cfg, "p-stop", w_stop, sw.p_stop);
      config_override(cfg, "p-step", w_step, sw.p_step);
      config_override(cfg, "channels", w_channels, sw.channels);
      config_override(cfg, "threads", w_threads, sw.threads);
      return cmd_sweep(sw);
    }
    if (*resources) {
      std::uint64_t count = qcast::resource_count(res_m, res_n);
      if (res_json) {
        json out = {{"m", res_m}, {"n", res_n}, {"bell_pairs", count}};
        write_output(res_output, out.dump(2) + "\n");
      } else {
        write_output(res_output, std::to_string(count) + "\n");
      }
      return 0;
    }
    if (*exportq) {
      write_output(qasm_output, qcast::to_qasm(qcast::fig_circuit(qasm_id)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
