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

#include "magic/kernels.hpp"

#include <cmath>

#include "magic/gates.hpp"

namespace magic::kernels {

namespace {

// Below this dimension the thread fork costs more than the loop body.
constexpr Eigen::Index kParallelDim = 64;

// Runs body(i) for i in [0, count), across threads only when `parallel` is set. Keeping the
// serial branch outside any omp region avoids the team setup cost on small registers.
template <class Body>
void for_each_index(Eigen::Index count, bool parallel, Body&& body) {
  if (parallel) {
#pragma omp parallel for
    for (Eigen::Index i = 0; i < count; ++i) body(i);
  } else {
    for (Eigen::Index i = 0; i < count; ++i) body(i);
  }
}

int qubit_count_of(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

// Per-xor-mask coherence factor exp(-T sum_k rate_k [bit_k set]).
std::vector<double> decay_table(int n, double duration, std::span<const double> rates) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> table(dim, 1.0);
  if (rates.empty()) return table;
  for (std::size_t mask = 0; mask < dim; ++mask) {
    double s = 0.0;
    for (int q = 0; q < n; ++q)
      if (mask >> bit_of(q, n) & 1u) s += rates[q];
    table[mask] = std::exp(-duration * s);
  }
  return table;
}

}  // namespace

void left_multiply_one_qubit(ComplexMatrix& m, int n, int q, const Matrix2c& u) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index stride = Eigen::Index{1} << bit_of(q, n);
  const Eigen::Index half = dim / 2;
  const Eigen::Index cols = m.cols();
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for_each_index(cols, dim >= kParallelDim, [&](Eigen::Index c) {
    for (Eigen::Index k = 0; k < half; ++k) {
      const Eigen::Index i0 = (k / stride) * 2 * stride + (k % stride);
      const Eigen::Index i1 = i0 + stride;
      const Complex a = m(i0, c), b = m(i1, c);
      m(i0, c) = u00 * a + u01 * b;
      m(i1, c) = u10 * a + u11 * b;
    }
  });
}

void conjugate_one_qubit(ComplexMatrix& rho, int n, int q, const Matrix2c& u) {
  left_multiply_one_qubit(rho, n, q, u);
  const Eigen::Index dim = rho.rows();
  const Eigen::Index stride = Eigen::Index{1} << bit_of(q, n);
  const Eigen::Index half = dim / 2;
  const Complex v00 = std::conj(u(0, 0)), v01 = std::conj(u(0, 1));
  const Complex v10 = std::conj(u(1, 0)), v11 = std::conj(u(1, 1));
  for_each_index(half, dim >= kParallelDim, [&](Eigen::Index k) {
    const Eigen::Index c0 = (k / stride) * 2 * stride + (k % stride);
    const Eigen::Index c1 = c0 + stride;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Complex a = rho(r, c0), b = rho(r, c1);
      rho(r, c0) = a * v00 + b * v01;
      rho(r, c1) = a * v10 + b * v11;
    }
  });
}

RealVector ising_energies(const RealMatrix& j) {
  const int n = static_cast<int>(j.rows());
  const Eigen::Index dim = Eigen::Index{1} << n;
  RealVector e = RealVector::Zero(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
      const double zp = (a >> bit_of(p, n) & 1) ? -1.0 : 1.0;
      for (int r = p + 1; r < n; ++r) {
        const double zr = (a >> bit_of(r, n) & 1) ? -1.0 : 1.0;
        s += j(p, r) * zp * zr;
      }
    }
    e(a) = s;
  }
  return e;
}

void ising_window(ComplexMatrix& rho, const RealVector& energies, double duration,
                  std::span<const double> rates) {
  const Eigen::Index dim = rho.rows();
  const int n = qubit_count_of(dim);
  const auto decay = decay_table(n, duration, rates);
  const double h = duration / 2;
  for_each_index(dim, dim >= kParallelDim, [&](Eigen::Index b) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      const double phase = h * (energies(a) - energies(b));
      rho(a, b) *= std::polar(decay[static_cast<std::size_t>(a ^ b)], phase);
    }
  });
}

void dephase(ComplexMatrix& rho, double duration, std::span<const double> rates) {
  if (rates.empty()) return;
  const Eigen::Index dim = rho.rows();
  const int n = qubit_count_of(dim);
  const auto decay = decay_table(n, duration, rates);
  for_each_index(dim, dim >= kParallelDim, [&](Eigen::Index b) {
    for (Eigen::Index a = 0; a < dim; ++a) rho(a, b) *= decay[static_cast<std::size_t>(a ^ b)];
  });
}

void left_multiply_ising(ComplexMatrix& m, const RealVector& energies, double duration) {
  const double h = duration / 2;
  const Eigen::Index cols = m.cols();
  for_each_index(cols, m.rows() >= kParallelDim, [&](Eigen::Index c) {
    for (Eigen::Index a = 0; a < m.rows(); ++a) m(a, c) *= std::polar(1.0, h * energies(a));
  });
}

void mix_white_noise(ComplexMatrix& rho, double zeta) {
  const Eigen::Index dim = rho.rows();
  rho *= (1.0 - zeta);
  const double add = zeta / static_cast<double>(dim);
  for (Eigen::Index a = 0; a < dim; ++a) rho(a, a) += add;
}

namespace reference {

ComplexMatrix embed(const Matrix2c& u, int n, int q) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix f = (k == q) ? ComplexMatrix(u) : ComplexMatrix::Identity(2, 2);
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

ComplexMatrix ising_unitary(const RealMatrix& j, double duration) {
  const int n = static_cast<int>(j.rows());
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix generator = ComplexMatrix::Zero(dim, dim);
  for (int p = 0; p < n; ++p)
    for (int r = p + 1; r < n; ++r)
      generator += j(p, r) * embed(gates::pauli_z(), n, p) * embed(gates::pauli_z(), n, r);
  // The generator is diagonal in the computational basis; exponentiate entrywise.
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    u(a, a) = std::exp(Complex(0, duration / 2) * generator(a, a));
  return u;
}

ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u) {
  return u * rho * u.adjoint();
}

ComplexMatrix dephase(const ComplexMatrix& rho, double duration, std::span<const double> rates) {
  const int n = qubit_count_of(rho.rows());
  ComplexMatrix out = rho;
  for (int q = 0; q < n && q < static_cast<int>(rates.size()); ++q) {
    const double p = 0.5 * (1.0 - std::exp(-rates[q] * duration));
    const ComplexMatrix z = embed(gates::pauli_z(), n, q);
    out = (1.0 - p) * out + p * z * out * z;
  }
  return out;
}

ComplexMatrix mix_white_noise(const ComplexMatrix& rho, double zeta) {
  const Eigen::Index dim = rho.rows();
  return zeta * ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim) + (1.0 - zeta) * rho;
}

}  // namespace reference
}  // namespace magic::kernels
