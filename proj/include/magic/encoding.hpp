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
#include <string>
#include <vector>

#include "magic/basis.hpp"
#include "magic/coupling.hpp"
#include "magic/program.hpp"
#include "magic/types.hpp"

namespace magic::encoding {

struct QubitEncoding {
  Basis basis = Basis::SigmaMinus;
  int m_F() const { return magnetic_number(basis); }
};

/// Per-qubit encoding for a whole register.
struct TopologyAssignment {
  std::vector<QubitEncoding> qubits;
  std::string label;

  /// From a string such as "-,+,0" (sigma-, sigma+, pi).
  static TopologyAssignment parse(const std::string& text, std::string label = "custom");
  static TopologyAssignment uniform(int n, Basis basis, std::string label = "uniform");

  int size() const { return static_cast<int>(qubits.size()); }
  std::vector<Basis> bases() const;
  std::string to_string() const;
};

/// J_eff_ij = m_F(i) m_F(j) |J_ij|. `base` holds the |m_F| = 1 magnitudes.
CouplingMatrix effective_couplings(const CouplingMatrix& base, const TopologyAssignment& assignment);

/// Couplings under arbitrary encodings when `sigma_minus` is the matrix measured with every
/// spin in sigma-: J_ij m_F(i) m_F(j). Keeps the sign of a user-supplied matrix.
CouplingMatrix encoded_couplings(const CouplingMatrix& sigma_minus, std::span<const Basis> bases);

/// Which ion each topology preset flips or decouples (0-based).
struct PresetOptions {
  int opposite_sign_flip = 0;  // B: one edge ion in sigma+, next-neighbor couplings of opposite sign
  int same_sign_flip = 1;      // C: middle ion in sigma+, next-neighbor couplings of the same sign
  int decoupled = 0;           // D: one ion in the pi basis
};

/// Three-ion presets A..E: all sigma-, edge flipped, middle flipped, one pi, all pi.
TopologyAssignment topology_preset(char label, const PresetOptions& options = {});

/// Basis transfer block pi_pi pi_sigma^(n) pi_pi (or pi_pi pi_sigma^(1..N) pi_pi for all qubits),
/// every pulse with phase 0. Only sigma <-> pi transfers are supported.
std::vector<PulseInstruction> transfer_sequence(int qubit, Basis from, Basis to, int qubit_count);
/// Same, for every qubit; `from` lists the current encodings.
std::vector<PulseInstruction> transfer_all_sequence(std::span<const Basis> from, Basis to);

/// Decoupled memory: move `qubit` to the pi basis, evolve T/2, echo (pi, echo_phase) in the home
/// sigma basis, evolve T/2 in pi, then return. Four transfer blocks and one echo.
std::vector<PulseInstruction> memory_protocol(int qubit, Basis home, double duration,
                                              int qubit_count, DdSpec dd = {},
                                              double echo_phase = kPi / 2);

/// Unitary of a list of microwave pulses on one ion's four ground levels
/// {F=0, (F=1, m_F=-1), (F=1, m_F=0), (F=1, m_F=+1)}; each pulse is a resonant pi rotation on
/// its two-level transition. Shared pi-transition pulses act on every ion; pulses addressed to
/// another ion act as identity.
ComplexMatrix level_unitary(std::span<const MicrowavePulse> pulses, int ion);

/// Level index hosting the logical |1> in `basis` (|0> is always F=0, index 0).
int upper_level(Basis basis);

}  // namespace magic::encoding
