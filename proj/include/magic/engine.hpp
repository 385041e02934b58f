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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "magic/coupling.hpp"
#include "magic/program.hpp"
#include "magic/state.hpp"

namespace magic {

struct EngineOptions {
  /// Finite pulses take theta / rabi_frequency each; J evolution is frozen during them but
  /// dephasing keeps acting.
  bool finite_pulses = false;
  double rabi_frequency = kTwoPi * 50e3;  // rad/s
  /// Advance successive KDD blocks by (0, pi/2, 0, pi/2) so a train of 20 pulses is the identity.
  bool kdd_phase_advance = true;
  bool record_events = true;
};

/// One applied operator or window.
struct Event {
  int instruction = 0;  // index into the program; -1 for engine-inserted steps
  std::string kind;     // R, PH, EV, DD, XFER, ECHO, NOISE, MEAS
  std::string detail;
  double start = 0.0;     // s
  double duration = 0.0;  // s
};
std::string format_event(const Event& e);

struct RunResult {
  QuantumState state;
  std::vector<Event> events;
  bool measured = false;
  double elapsed = 0.0;  // s
};

void apply_rotation(QuantumState& state, int qubit, double theta, double phi);
void apply_phase(QuantumState& state, int qubit, double phi);

/// exp(+i T/2 sum_{i<j} J_ij Z_i Z_j), with dephasing from each qubit's basis tag when the
/// noise model enables it. Throws InvalidArgument on an asymmetric J or negative T.
void free_evolution(QuantumState& state, const RealMatrix& j_eff, double duration,
                    const NoiseModel& noise = NoiseModel::noiseless());
void free_evolution(QuantumState& state, const CouplingMatrix& j_eff, double duration,
                    const NoiseModel& noise = NoiseModel::noiseless());

/// Runs the program from `initial`. `j_sigma_minus` holds the couplings with every spin in
/// sigma-; each window uses J_ij m_F(i) m_F(j) from the current basis tags.
RunResult run_program(const PulseProgram& program, QuantumState initial,
                      const CouplingMatrix& j_sigma_minus, const NoiseModel& noise,
                      const EngineOptions& options = {});

/// Noiseless unitary of the program (relabel not applied).
ComplexMatrix program_unitary(const PulseProgram& program, const CouplingMatrix& j_sigma_minus,
                              std::vector<Basis> bases = {}, const EngineOptions& options = {});

/// Per-pulse phases of a decoupling train.
std::vector<double> dd_phases(int pulses, DdScheme scheme, bool kdd_phase_advance = true);

/// [tau pi^(1) ... pi^(N) tau]^n with tau = window / (2 n). Qubits flagged in `skip` receive no
/// pulses. CPMG needs an even count; KDD a multiple of 10, or of 20 with the phase advance.
std::vector<PulseInstruction> dd_fragment(int pulses, double window, DdScheme scheme, int qubit_count,
                                          const std::vector<bool>& skip = {},
                                          bool kdd_phase_advance = true);

/// EV(T/2) R_k(pi, 0) EV(T/2) R_k(pi, 0): removes every coupling that involves qubit k.
std::vector<PulseInstruction> selective_recoupling_wrap(double inner_duration, int echo_qubit,
                                                        DdSpec dd = {});

struct RamseySpec {
  /// One character per qubit: '+' gets the pi/2 preparation pulse, '0'/'1' stay eigenstates.
  std::string prep = "+11";
  double conditional_time = 0.0;  // s
  std::vector<double> phases;     // analysis phases, rad
  DdSpec dd;
  std::vector<int> echo_qubits;   // selective recoupling of these qubits
  std::vector<Basis> bases;       // empty: all sigma-
  long shots = 0;                 // 0: exact probabilities
  std::uint64_t seed = 0;
};

struct RamseyResult {
  int analysis_qubit = 0;
  std::vector<double> phases;
  std::vector<double> probability;  // exact P(up) after readout confusion
  std::vector<double> sampled;      // shot frequencies when shots > 0
  long shots = 0;
  std::vector<std::string> flags;
};

/// Evenly spaced phases covering [0, 2 pi] inclusive.
std::vector<double> phase_grid(int points);

RamseyResult ramsey_scan(const RamseySpec& spec, const CouplingMatrix& j_sigma_minus,
                         const NoiseModel& noise, const EngineOptions& options = {});

}  // namespace magic
