// SPDX-License-Identifier: MIT
#include "qcast/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <thread>

#include "qcast/circuit.hpp"
#include "qcast/metrics.hpp"

namespace qcast {

void SweepConfig::validate() const {
  if (!(p_start >= 0.0 && p_start <= p_stop && p_stop <= 1.0))
    throw std::invalid_argument("SweepConfig: need 0 <= p_start <= p_stop <= 1");
  if (!(p_step > 0.0)) throw std::invalid_argument("SweepConfig: need p_step > 0");
  if (kinds.empty()) throw std::invalid_argument("SweepConfig: no noise kinds");
  if (channels.empty()) throw std::invalid_argument("SweepConfig: no channels");
  for (const auto& c : channels)
    if (c != "bell-pair" && c != "cluster")
      throw std::invalid_argument("SweepConfig: unknown channel " + c);
}

std::vector<double> SweepConfig::grid() const {
  std::vector<double> ps;
  // half-step slack so p_stop lands on the grid despite rounding
  for (double p = p_start; p <= p_stop + p_step * 0.5; p += p_step)
    ps.push_back(std::min(p, p_stop));
  return ps;
}

double preparation_fidelity(const std::string& channel, NoiseKind kind,
                            NoiseMode mode, double p) {
  Circuit prep;
  std::vector<QubitIndex> transmitted;
  if (channel == "bell-pair") {
    prep = bell_pair_prep();
    transmitted = {1, 3};
  } else if (channel == "cluster") {
    prep = cluster_prep();
    transmitted = {2, 3};
  } else {
    throw std::invalid_argument("preparation_fidelity: unknown channel " + channel);
  }
  NoiseSpec spec{NoiseChannel::make(kind, p), mode, transmitted};
  DensityMatrix noisy = inject(prep, spec);
  return fidelity_pure(run_statevector(prep), noisy);
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<double> ps = cfg.grid();

  std::vector<SweepRow> rows;
  for (NoiseKind kind : cfg.kinds)
    for (double p : ps)
      for (const std::string& channel : cfg.channels)
        rows.push_back({to_string(kind), to_string(cfg.mode), p, channel, 0.0});

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
      SweepRow& row = rows[i];
      row.fidelity = preparation_fidelity(
          row.channel, noise_kind_from_string(row.noise_type), cfg.mode, row.p);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return rows;
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "noise_type,mode,p,channel,fidelity\n";
  for (const SweepRow& r : rows) {
    out += r.noise_type;
    out += ',';
    out += r.mode;
    out += ',';
    out += format_sig12(r.p);
    out += ',';
    out += r.channel;
    out += ',';
    out += format_sig12(r.fidelity);
    out += '\n';
  }
  return out;
}

std::map<std::string, double> branch_distribution(const Transcript& t) {
  std::map<std::string, double> dist;
  for (const Branch& b : t.branches) {
    std::string label;
    for (const std::string& o : b.outcomes) label += o;
    dist[label] += b.probability;
  }
  return dist;
}

std::map<std::string, std::uint64_t> sample_branches(const Transcript& t,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed) {
  if (t.branches.empty())
    throw std::invalid_argument("sample_branches: transcript has no branches");
  std::vector<std::string> labels;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const Branch& b : t.branches) {
    std::string label;
    for (const std::string& o : b.outcomes) label += o;
    labels.push_back(std::move(label));
    acc += b.probability;
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;  // guard against roundoff at the top end

  std::mt19937_64 rng(seed);
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53-bit uniform in [0,1); fully specified by the engine, unlike
    // std::discrete_distribution.
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= labels.size()) idx = labels.size() - 1;
    ++counts[labels[idx]];
  }
  return counts;
}

}  // namespace qcast
