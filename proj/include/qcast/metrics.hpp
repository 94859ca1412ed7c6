// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qcast/state.hpp"

namespace qcast {

// Uhlmann fidelity in the squared convention: F = (Tr sqrt(sqrt(s) r sqrt(s)))^2.
// Pure inputs (rank one within kStructuralTol) take the <psi|rho|psi> fast
// path; both paths agree within kEqualityTol and are cross-checked in tests.
double uhlmann_fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);
double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);

// Bell pairs needed to replace a broadcast channel with m coefficients per
// receiver and n receivers: ceil(log2(m^n)), evaluated in exact integer
// arithmetic (bit length of m^n - 1). m >= 2, n >= 1.
std::uint64_t resource_count(std::uint64_t m, std::uint64_t n);

struct Transcript;
struct KnownQubit;

struct FidelityReport {
  // receiver index -> fidelity per branch, in transcript branch order
  std::map<int, std::vector<double>> per_branch;
  // receiver index -> probability-weighted fidelity (over the selected branches)
  std::map<int, double> weighted;
};

// Fidelity of every receiver's per-branch output against the target. With
// success_only the weighting renormalizes over success branches.
FidelityReport receiver_fidelities(const Transcript& t, const KnownQubit& target,
                                   bool success_only = false);

}  // namespace qcast
