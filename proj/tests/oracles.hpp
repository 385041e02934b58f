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

// Independent constructions used as test oracles. Everything here is built from dense
// Kronecker products and matrix exponentials, never from the library kernels.

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "magic/types.hpp"

namespace oracle {

using magic::Complex;
using magic::ComplexMatrix;
using magic::ComplexVector;
using magic::Matrix2c;
using magic::RealMatrix;
using magic::Vector2c;

inline const Complex I{0.0, 1.0};

inline Matrix2c X() { Matrix2c m; m << 0, 1, 1, 0; return m; }
inline Matrix2c Y() { Matrix2c m; m << 0, -I, I, 0; return m; }
inline Matrix2c Z() { Matrix2c m; m << 1, 0, 0, -1; return m; }
inline Matrix2c Id() { return Matrix2c::Identity(); }

inline ComplexMatrix kron_all(const std::vector<Matrix2c>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) {
    ComplexMatrix next = Eigen::kroneckerProduct(out, ComplexMatrix(f)).eval();
    out = next;
  }
  return out;
}

inline ComplexMatrix on(const Matrix2c& u, int n, int q) {
  std::vector<Matrix2c> f(n, Id());
  f[q] = u;
  return kron_all(f);
}

/// exp(-i theta/2 (cos phi X + sin phi Y)) by matrix exponential.
inline Matrix2c rot(double theta, double phi) {
  const Matrix2c g = std::cos(phi) * X() + std::sin(phi) * Y();
  return Matrix2c((-I * (theta / 2) * g).exp());
}

inline Matrix2c zphase(double phi) { return Matrix2c((-I * phi * Z()).exp()); }

/// exp(+i T/2 sum_{i<j} J_ij Z_i Z_j) by matrix exponential of the dense Hamiltonian.
inline ComplexMatrix ising(const RealMatrix& j, double t) {
  const int n = static_cast<int>(j.rows());
  const int d = 1 << n;
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) h += j(a, b) * on(Z(), n, a) * on(Z(), n, b);
  return ComplexMatrix((I * (t / 2) * h).exp());
}

inline ComplexMatrix qft(int d) {
  ComplexMatrix f(d, d);
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m) f(k, m) = std::polar(1.0 / std::sqrt(double(d)), 2 * M_PI * k * m / d);
  return f;
}

/// max |A - e^{i delta} B| over the best global phase.
inline double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex ph = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

inline RealMatrix random_j(std::mt19937_64& g, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RealMatrix j = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) j(a, b) = j(b, a) = u(g);
  return j;
}

inline Vector2c random_qubit(std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  Vector2c v(Complex(nd(g), nd(g)), Complex(nd(g), nd(g)));
  return v.normalized();
}

inline ComplexMatrix random_density(std::mt19937_64& g, int d) {
  std::normal_distribution<double> nd;
  ComplexMatrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = Complex(nd(g), nd(g));
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

inline Matrix2c random_unitary(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  return Matrix2c(zphase(u(g)) * rot(u(g) / 2, u(g)) * zphase(u(g)));
}

inline std::vector<double> random_distribution(std::mt19937_64& g, int d) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double s = 0;
  for (auto& x : p) s += (x = e(g));
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace oracle
