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

#include <span>
#include <vector>

#include "magic/types.hpp"

// Qubit q of an n-qubit register is bit (n - 1 - q) of a basis index, so qubit 0 is the most
// significant bit and |q0 q1 ... q_{n-1}> reads left to right.

namespace magic::kernels {

constexpr int bit_of(int q, int n) { return n - 1 - q; }

/// rho <- U rho U^dagger for a 2x2 U on qubit q.
void conjugate_one_qubit(ComplexMatrix& rho, int n, int q, const Matrix2c& u);

/// M <- U_q M for any matrix whose rows index the register (state vectors, unitaries).
void left_multiply_one_qubit(ComplexMatrix& m, int n, int q, const Matrix2c& u);

/// E_a = sum_{i<j} J_ij z_i(a) z_j(a) with z = +1 for bit 0 and -1 for bit 1.
RealVector ising_energies(const RealMatrix& j);

/// Free evolution exp(+i T/2 sum J z z) fused with local dephasing: element (a, b) also picks up
/// exp(-T sum_k rate_k [bit_k(a) != bit_k(b)]). `rates` may be empty (no dephasing).
void ising_window(ComplexMatrix& rho, const RealVector& energies, double duration,
                  std::span<const double> rates);

/// Dephasing only (used for finite pulse durations).
void dephase(ComplexMatrix& rho, double duration, std::span<const double> rates);

/// M <- D M with D = diag(exp(+i T/2 E_a)).
void left_multiply_ising(ComplexMatrix& m, const RealVector& energies, double duration);

/// rho <- zeta I / d + (1 - zeta) rho.
void mix_white_noise(ComplexMatrix& rho, double zeta);

/// Serial dense implementations used as test oracles and benchmark baselines.
namespace reference {

/// I (x) ... (x) U (x) ... (x) I with U at qubit q, built from Kronecker products.
ComplexMatrix embed(const Matrix2c& u, int n, int q);
/// Dense diagonal matrix of exp(+i T/2 sum_{i<j} J_ij Z_i Z_j) from explicit Z_i Z_j products.
ComplexMatrix ising_unitary(const RealMatrix& j, double duration);
ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u);
/// Sum of local phase-flip Kraus maps, applied qubit by qubit.
ComplexMatrix dephase(const ComplexMatrix& rho, double duration, std::span<const double> rates);
ComplexMatrix mix_white_noise(const ComplexMatrix& rho, double zeta);

}  // namespace reference
}  // namespace magic::kernels
