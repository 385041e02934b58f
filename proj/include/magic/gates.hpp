// Copyright 2026 The magic-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "magic/types.hpp"

namespace magic::gates {

inline Matrix2c identity() { return Matrix2c::Identity(); }

inline Matrix2c pauli_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2c pauli_y() {
  Matrix2c m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix2c pauli_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

/// R(theta, phi) = exp(-i theta/2 (cos(phi) X + sin(phi) Y)).
inline Matrix2c rotation(double theta, double phi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2c m;
  m << c, Complex(0, -1) * s * std::exp(Complex(0, -phi)),
      Complex(0, -1) * s * std::exp(Complex(0, phi)), c;
  return m;
}

/// Phi(phi) = exp(-i phi Z).
inline Matrix2c phase(double phi) {
  Matrix2c m;
  m << std::exp(Complex(0, -phi)), 0, 0, std::exp(Complex(0, phi));
  return m;
}

}  // namespace magic::gates
