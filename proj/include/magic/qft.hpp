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

#include <array>
#include <string>
#include <vector>

#include "magic/coupling.hpp"
#include "magic/program.hpp"
#include "magic/types.hpp"

namespace magic::qft {

enum class Form { Exact, Optimized };
std::string to_string(Form f);
Form parse_form(const std::string& token);

/// F_{kn} = exp(2 pi i n k / N) / sqrt(N) for N = `states`.
ComplexMatrix reference_qft(int states);

/// |tr(F^dagger U)|^2 / d^2: one to machine precision iff U = e^{i delta} F.
double process_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual);

/// First two windows. With phi12 = pi/8 + m pi and phi13 = -pi/16:
/// T1 = phi12/J12 - phi13/J13, T2 = phi12/J12 + phi13/J13, using the smallest |m| that makes
/// both times non-negative. m = 0 whenever 0 < J12 <= 2 J13.
struct Times {
  double t1 = 0.0;  // s
  double t2 = 0.0;  // s
  int branch = 0;   // m
};
Times plan_times(const CouplingMatrix& j);

/// Real and imaginary parts of the two complex parameter equations at (T3, A1, A2).
Eigen::Vector4d residuals(double t3, double a1, double a2, double j23, double alpha);
/// Analytic derivative of `residuals` with respect to (T3, A1, A2).
Eigen::Matrix<double, 4, 3> residual_jacobian(double t3, double a1, double a2, double j23, double alpha);

struct EntanglingParams {
  double t3 = 0.0;  // s
  double a1 = 0.0;  // rad
  double a2 = 0.0;  // rad
  double alpha = 0.0;
  double residual_norm = 0.0;
};

struct SolverOptions {
  int grid = 16;  // starts per axis
  int max_iterations = 200;
  double residual_tolerance = 1e-10;
  double fidelity_tolerance = 1e-9;
};

/// Distinct roots with T3 > 0 and A1, A2 in (0, 2 pi), sorted by T3 then A1 + A2.
std::vector<EntanglingParams> entangling_roots(const CouplingMatrix& j, const SolverOptions& options = {});

/// Shortest root whose exact sequence reproduces the QFT to `fidelity_tolerance`.
/// Throws ConvergenceError with landscape diagnostics when no start converges.
EntanglingParams solve_entangling_params(const CouplingMatrix& j, const SolverOptions& options = {});

/// J23 at which the shortest root has T3 = `target_t3`, found by a secant search that tracks
/// the root from `guess` by continuation.
double calibrate_j23(double j12, double j13, double target_t3, double guess);

/// Reference three-spin couplings: J12 = 2 pi x 31.98 Hz, J13 = 2 pi x 18.01 Hz, and J23
/// calibrated so that T3 = 4.87 ms. Computed once per process.
const CouplingMatrix& calibrated_couplings();

struct EmitOptions {
  DdSpec t1_dd;       // decoupling during the first window
  DdSpec t3_half_dd;  // decoupling in each half of the recoupled window
};

/// Default decoupling: 20 KDD pulses during T1 and 20 in each half of T3.
EmitOptions standard_decoupling();

/// Exact form: every factor of the derivation, including U(T2). Optimized form: U(T2) dropped
/// and the remaining pulses merged. Both end in MEAS and exchange qubits 1 and 3 by relabel.
PulseProgram emit_sequence(const Times& times, const EntanglingParams& params, Form form,
                           const EmitOptions& options = {});

/// Program unitary followed by its relabel permutation.
ComplexMatrix logical_unitary(const PulseProgram& program, const CouplingMatrix& j);

/// The fifteen inputs used to probe every column and the column phases.
std::vector<std::string> table_inputs();

struct InputCheck {
  std::string label;
  double fidelity = 0.0;
};

struct VerificationReport {
  std::vector<InputCheck> basis;          // eight computational inputs
  std::vector<InputCheck> superposition;  // seven superposition inputs
  double process_infidelity = 0.0;
  double min_fidelity = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

VerificationReport verify_plan(const PulseProgram& program, const CouplingMatrix& j, double threshold = 1e-9);

/// Pairwise controlled-phase estimate: each pair's conditional angle theta (pi/2, pi/4, pi/2 for
/// pairs 12, 13, 23) is accumulated at rate J with the spectator decoupled, T = theta / |J|.
/// `minimal` uses the half-angle ZZ convention, T = theta / (2 |J|).
struct SerialBaseline {
  std::array<double, 3> pair_times{};
  double duration = 0.0;
  double minimal = 0.0;
};
SerialBaseline serial_baseline(const CouplingMatrix& j);

struct QftPlan {
  CouplingMatrix j;
  Times times;
  EntanglingParams params;
  PulseProgram exact;
  PulseProgram optimized;
  double exact_duration = 0.0;
  double optimized_duration = 0.0;
  double exact_infidelity = 0.0;
  double optimized_infidelity = 0.0;
};

QftPlan compile_qft(const CouplingMatrix& j, const EmitOptions& options = {}, const SolverOptions& solver = {});

/// Multi-line human-readable summary.
std::string format_plan(const QftPlan& plan);

}  // namespace magic::qft
