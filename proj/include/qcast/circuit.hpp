// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcast/state.hpp"

namespace qcast {

enum class GateKind { H, X, Y, Z, S, P, CNOT, CZ };

struct Gate {
  GateKind kind;
  std::vector<QubitIndex> qubits;  // control first for CNOT/CZ
  double angle = 0.0;              // P only
};

struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;
};

Matrix gate_matrix(const Gate& g);

StateVector run_statevector(const Circuit& c);
DensityMatrix run_density(const Circuit& c);

// Fixed preparation circuits for the two broadcast channels under comparison.
Circuit bell_pair_prep();     // H0, CX01, H2, CX23  ->  Phi+ x Phi+ on (0,1),(2,3)
Circuit cluster_prep();       // H0, H1, CX02, CX13, CZ01  ->  4-qubit cluster
Circuit cluster_plus_prep();  // H0, H1, CX02, CX13  ->  all-plus cluster variant

// A circuit plus its measurement layer, enough to describe the exported
// broadcast figures (measurements and classically conditioned corrections).
struct MeasureOp {
  QubitIndex qubit;
  std::string creg;
  int bit;
};

struct CondGate {
  std::string creg;
  int value;  // fires when the register equals this value
  Gate gate;
};

struct MeasuredCircuit {
  Circuit prep;  // everything before the measurements, basis rotations included
  bool barrier = false;
  std::vector<std::pair<std::string, int>> cregs;  // name, width
  std::vector<MeasureOp> measurements;
  std::vector<CondGate> conditionals;
};

// ids: fig1a, fig1b, fig3a, fig3b. Throws on anything else.
MeasuredCircuit fig_circuit(const std::string& id);

std::string to_qasm(const MeasuredCircuit& mc);
MeasuredCircuit parse_qasm(const std::string& text);

}  // namespace qcast
