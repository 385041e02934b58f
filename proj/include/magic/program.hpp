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

#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "magic/basis.hpp"

namespace magic {

enum class DdScheme { None, Cpmg, Kdd };

std::string to_string(DdScheme s);
DdScheme parse_dd_scheme(const std::string& token);

/// Dynamical-decoupling annotation on a free-evolution window.
struct DdSpec {
  int pulses = 0;
  DdScheme scheme = DdScheme::None;

  bool active() const { return scheme != DdScheme::None && pulses > 0; }
  bool operator==(const DdSpec&) const = default;
};

/// A microwave pulse on a physical transition, recorded for basis-transfer blocks.
struct MicrowavePulse {
  enum class Transition { Pi, SigmaMinus, SigmaPlus };
  Transition transition = Transition::Pi;
  int qubit = -1;  // -1: the pi transition is common to all ions
  double phase = 0.0;
  bool operator==(const MicrowavePulse&) const = default;
};

/// R_k(theta, phi) = exp(-i theta/2 (cos(phi) X + sin(phi) Y)).
struct Rotate {
  int qubit = 0;
  double theta = 0.0;
  double phi = 0.0;
  bool operator==(const Rotate&) const = default;
};

/// Phi_k(phi) = exp(-i phi Z). A frame change of the drive, applied without error.
struct PhaseShift {
  int qubit = 0;
  double phi = 0.0;
  bool operator==(const PhaseShift&) const = default;
};

/// exp(+i T/2 sum_{i<j} J_ij Z_i Z_j), optionally decorated with a DD train.
struct FreeEvolve {
  double duration = 0.0;  // s
  DdSpec dd;
  bool operator==(const FreeEvolve&) const = default;
};

/// Re-houses the logical qubit (or every qubit when qubit == kAllQubits) in `target`.
struct TransferBasis {
  static constexpr int kAllQubits = -1;
  int qubit = kAllQubits;
  Basis target = Basis::Pi;
  std::vector<MicrowavePulse> pulses;
  bool operator==(const TransferBasis&) const = default;
};

/// Refocusing pi pulse R_k(pi, phi), tagged separately in logs.
struct Echo {
  int qubit = 0;
  double phi = 0.0;
  bool operator==(const Echo&) const = default;
};

/// Projective measurement in the computational basis. Must be the last instruction.
struct Measure {
  bool operator==(const Measure&) const = default;
};

using PulseInstruction = std::variant<Rotate, PhaseShift, FreeEvolve, TransferBasis, Echo, Measure>;

/// Ordered instruction list on a register of `qubit_count` qubits (indices are 0-based).
///
/// `relabel` maps each physical qubit to its logical output position; an empty vector is the
/// identity. It is metadata applied to measurement outcomes, not pulses.
struct PulseProgram {
  int qubit_count = 0;
  std::vector<PulseInstruction> instructions;
  std::vector<int> relabel;

  PulseProgram() = default;
  explicit PulseProgram(int n) : qubit_count(n) {}

  PulseProgram& add(PulseInstruction op) {
    instructions.push_back(std::move(op));
    return *this;
  }
  PulseProgram& append(const std::vector<PulseInstruction>& fragment);

  /// Throws InvalidArgument on out-of-range qubits, negative durations, theta outside [0, 2pi],
  /// a malformed relabel permutation, or a Measure that is not last.
  void validate() const;
  /// Sum of free-evolution durations (pulses are instantaneous).
  double evolution_time() const;
  int pulse_count() const;
};

/// Text form, one instruction per line, qubits 1-based:
///   QUBITS <n>
///   RELABEL <p1> ... <pn>
///   R <q> <theta> <phi>
///   PH <q> <phi>
///   EV <seconds> [dd=<n>,<scheme>]
///   XFER <q|all> <basis>
///   ECHO <q> <phi>
///   MEAS
/// Angles accept a `pi` suffix (`0.5pi`, `3/16pi`). `#` starts a comment.
PulseProgram parse_program(std::istream& in, const std::string& source = "<input>",
                           int default_qubits = 0);
PulseProgram load_program(const std::string& path, int default_qubits = 0);
void write_program(std::ostream& out, const PulseProgram& program);
std::string format_instruction(const PulseInstruction& op);

}  // namespace magic
