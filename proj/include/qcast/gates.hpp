// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "qcast/state.hpp"

namespace qcast::gates {

inline Matrix I2() { return Matrix::Identity(2, 2); }

inline Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix Y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix H() {
  Matrix m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

inline Matrix S() {
  Matrix m(2, 2);
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

// Phase gate diag(1, e^{i phi}).
inline Matrix P(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

// Two-qubit gates, first qubit = control = more significant bit.
inline Matrix CNOT() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

inline Matrix CZ() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

inline Matrix pauli(char c) {
  switch (c) {
    case 'I': return I2();
    case 'X': return X();
    case 'Y': return Y();
    case 'Z': return Z();
    default: throw std::invalid_argument("pauli: expected one of I,X,Y,Z");
  }
}

// Left-to-right product, e.g. "ZX" = Z * X (apply X first).
inline Matrix pauli_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("pauli_string: empty");
  Matrix m = Matrix::Identity(2, 2);
  for (char c : s) m = m * pauli(c);
  return m;
}

}  // namespace qcast::gates
