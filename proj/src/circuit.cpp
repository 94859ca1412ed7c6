// SPDX-License-Identifier: MIT
#include "qcast/circuit.hpp"

#include <cstdio>
#include <regex>
#include <sstream>

#include "qcast/gates.hpp"
#include "qcast/tensor_ops.hpp"

namespace qcast {

Matrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return gates::H();
    case GateKind::X: return gates::X();
    case GateKind::Y: return gates::Y();
    case GateKind::Z: return gates::Z();
    case GateKind::S: return gates::S();
    case GateKind::P: return gates::P(g.angle);
    case GateKind::CNOT: return gates::CNOT();
    case GateKind::CZ: return gates::CZ();
  }
  throw std::invalid_argument("gate_matrix: unknown gate");
}

namespace {

std::size_t arity(GateKind k) {
  return (k == GateKind::CNOT || k == GateKind::CZ) ? 2 : 1;
}

void check_gate(const Gate& g, std::size_t n_qubits) {
  if (g.qubits.size() != arity(g.kind))
    throw std::invalid_argument("gate has wrong qubit count");
  for (QubitIndex q : g.qubits)
    if (q >= n_qubits) throw std::invalid_argument("gate qubit out of range");
}

}  // namespace

StateVector run_statevector(const Circuit& c) {
  StateVector psi = StateVector::zero(c.n_qubits);
  for (const Gate& g : c.gates) {
    check_gate(g, c.n_qubits);
    apply_unitary(psi, gate_matrix(g), g.qubits);
  }
  return psi;
}

DensityMatrix run_density(const Circuit& c) {
  DensityMatrix rho = DensityMatrix::pure(StateVector::zero(c.n_qubits));
  for (const Gate& g : c.gates) {
    check_gate(g, c.n_qubits);
    apply_unitary(rho, gate_matrix(g), g.qubits);
  }
  return rho;
}

Circuit bell_pair_prep() {
  return Circuit{4,
                 {{GateKind::H, {0}},
                  {GateKind::CNOT, {0, 1}},
                  {GateKind::H, {2}},
                  {GateKind::CNOT, {2, 3}}}};
}

Circuit cluster_prep() {
  return Circuit{4,
                 {{GateKind::H, {0}},
                  {GateKind::H, {1}},
                  {GateKind::CNOT, {0, 2}},
                  {GateKind::CNOT, {1, 3}},
                  {GateKind::CZ, {0, 1}}}};
}

Circuit cluster_plus_prep() {
  return Circuit{4,
                 {{GateKind::H, {0}},
                  {GateKind::H, {1}},
                  {GateKind::CNOT, {0, 2}},
                  {GateKind::CNOT, {1, 3}}}};
}

MeasuredCircuit fig_circuit(const std::string& id) {
  MeasuredCircuit mc;
  if (id == "fig1a") {
    mc.prep = bell_pair_prep();
    return mc;
  }
  if (id == "fig1b") {
    mc.prep = cluster_prep();
    return mc;
  }
  if (id == "fig3a") {
    mc.prep = cluster_plus_prep();
    mc.prep.gates.push_back({GateKind::H, {0}});
    mc.prep.gates.push_back({GateKind::H, {1}});
    mc.barrier = true;
    mc.cregs = {{"c", 2}};
    mc.measurements = {{0, "c", 0}, {1, "c", 1}};
    mc.conditionals = {{"c", 1, {GateKind::Z, {2}}},
                       {"c", 2, {GateKind::Z, {3}}},
                       {"c", 3, {GateKind::Z, {2}}},
                       {"c", 3, {GateKind::Z, {3}}}};
    return mc;
  }
  if (id == "fig3b") {
    mc.prep = bell_pair_prep();
    mc.prep.gates.push_back({GateKind::H, {0}});
    mc.prep.gates.push_back({GateKind::H, {2}});
    mc.barrier = true;
    mc.cregs = {{"c0", 1}, {"c1", 1}};
    mc.measurements = {{0, "c0", 0}, {2, "c1", 0}};
    mc.conditionals = {{"c0", 1, {GateKind::Z, {1}}},
                       {"c1", 1, {GateKind::Z, {3}}}};
    return mc;
  }
  throw std::invalid_argument("unknown circuit id: " + id);
}

namespace {

std::string gate_to_qasm(const Gate& g) {
  char buf[64];
  switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::S: {
      const char* names = "hxyzs";
      std::snprintf(buf, sizeof(buf), "%c q[%zu];", names[static_cast<int>(g.kind)],
                    g.qubits[0]);
      return buf;
    }
    case GateKind::P:
      std::snprintf(buf, sizeof(buf), "u1(%.12g) q[%zu];", g.angle, g.qubits[0]);
      return buf;
    case GateKind::CNOT:
      std::snprintf(buf, sizeof(buf), "cx q[%zu],q[%zu];", g.qubits[0], g.qubits[1]);
      return buf;
    case GateKind::CZ:
      std::snprintf(buf, sizeof(buf), "cz q[%zu],q[%zu];", g.qubits[0], g.qubits[1]);
      return buf;
  }
  throw std::invalid_argument("gate_to_qasm: unknown gate");
}

}  // namespace

std::string to_qasm(const MeasuredCircuit& mc) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << mc.prep.n_qubits << "];\n";
  for (const auto& [name, width] : mc.cregs)
    out << "creg " << name << "[" << width << "];\n";
  for (const Gate& g : mc.prep.gates) out << gate_to_qasm(g) << "\n";
  if (mc.barrier) out << "barrier q;\n";
  for (const MeasureOp& m : mc.measurements)
    out << "measure q[" << m.qubit << "] -> " << m.creg << "[" << m.bit << "];\n";
  for (const CondGate& c : mc.conditionals)
    out << "if(" << c.creg << "==" << c.value << ") " << gate_to_qasm(c.gate) << "\n";
  return out.str();
}

namespace {

Gate parse_gate(const std::string& stmt) {
  static const std::regex one(R"(^([hxyzs])\s+q\[(\d+)\]$)");
  static const std::regex two(R"(^(cx|cz)\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]$)");
  static const std::regex phase(R"(^u1\(([^)]+)\)\s+q\[(\d+)\]$)");
  std::smatch m;
  if (std::regex_match(stmt, m, one)) {
    GateKind k;
    switch (m[1].str()[0]) {
      case 'h': k = GateKind::H; break;
      case 'x': k = GateKind::X; break;
      case 'y': k = GateKind::Y; break;
      case 'z': k = GateKind::Z; break;
      default: k = GateKind::S; break;
    }
    return Gate{k, {std::stoul(m[2])}};
  }
  if (std::regex_match(stmt, m, two)) {
    GateKind k = m[1] == "cx" ? GateKind::CNOT : GateKind::CZ;
    return Gate{k, {std::stoul(m[2]), std::stoul(m[3])}};
  }
  if (std::regex_match(stmt, m, phase))
    return Gate{GateKind::P, {std::stoul(m[2])}, std::stod(m[1])};
  throw std::invalid_argument("parse_qasm: unsupported statement: " + stmt);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

MeasuredCircuit parse_qasm(const std::string& text) {
  MeasuredCircuit mc;
  static const std::regex qreg_re(R"(^qreg\s+q\[(\d+)\]$)");
  static const std::regex creg_re(R"(^creg\s+(\w+)\[(\d+)\]$)");
  static const std::regex measure_re(R"(^measure\s+q\[(\d+)\]\s*->\s*(\w+)\[(\d+)\]$)");
  static const std::regex if_re(R"(^if\s*\(\s*(\w+)\s*==\s*(\d+)\s*\)\s*(.+)$)");

  std::string body;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    auto slash = line.find("//");
    if (slash != std::string::npos) line.erase(slash);
    body += line + "\n";
  }

  std::istringstream stmts(body);
  for (std::string raw; std::getline(stmts, raw, ';');) {
    std::string stmt = trim(raw);
    if (stmt.empty()) continue;
    if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0) continue;
    if (stmt.rfind("barrier", 0) == 0) {
      mc.barrier = true;
      continue;
    }
    std::smatch m;
    if (std::regex_match(stmt, m, qreg_re)) {
      mc.prep.n_qubits = std::stoul(m[1]);
      continue;
    }
    if (std::regex_match(stmt, m, creg_re)) {
      mc.cregs.emplace_back(m[1], std::stoi(m[2]));
      continue;
    }
    if (std::regex_match(stmt, m, measure_re)) {
      mc.measurements.push_back({std::stoul(m[1]), m[2], std::stoi(m[3])});
      continue;
    }
    if (std::regex_match(stmt, m, if_re)) {
      mc.conditionals.push_back({m[1], std::stoi(m[2]), parse_gate(trim(m[3]))});
      continue;
    }
    if (!mc.measurements.empty())
      throw std::invalid_argument("parse_qasm: unconditional gate after measurement");
    mc.prep.gates.push_back(parse_gate(stmt));
  }
  if (mc.prep.n_qubits == 0)
    throw std::invalid_argument("parse_qasm: missing qreg declaration");
  return mc;
}

}  // namespace qcast
