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

#include "magic/rng.hpp"
#include "magic/state.hpp"
#include "magic/types.hpp"

namespace magic::metrics {

/// Probabilities over computational outcomes. `shots == 0` means exact.
struct OutcomeDistribution {
  std::vector<double> p;
  long shots = 0;
  std::string label;

  std::size_t size() const { return p.size(); }
  /// Throws unless every entry is non-negative and the sum is one to 1e-9.
  void validate() const;
};

/// Outcome probabilities of `state`, with bits permuted so physical qubit q lands on logical
/// position relabel[q] (empty relabel: identity).
OutcomeDistribution outcome_distribution(const QuantumState& state, std::span<const int> relabel = {},
                                         std::string label = {});
/// Symmetric per-qubit bit flips with probability 1 - readout_fidelity.
OutcomeDistribution apply_readout_confusion(const OutcomeDistribution& d, int qubit_count,
                                            double readout_fidelity);
/// Multinomial frequencies from `shots` draws.
OutcomeDistribution sample(const OutcomeDistribution& d, long shots, CounterRng& rng);

/// Matrix of the relabel permutation acting on state vectors.
ComplexMatrix relabel_matrix(int qubit_count, std::span<const int> relabel);

double state_fidelity(const ComplexMatrix& rho, const ComplexVector& psi);
double state_fidelity(const QuantumState& state, const ComplexVector& psi);

/// Local rotations V_k = R(theta_k, phi_k) with V_k|0> equal to factor k up to phase.
struct LocalRotation {
  double theta = 0.0;
  double phi = 0.0;
};
LocalRotation rotation_to(const Vector2c& target);

/// <000| V^dagger rho V |000> for a product target given by its factors.
double fidelity_via_local_rotation(const QuantumState& state, const std::vector<Vector2c>& factors);
/// Same for a full state vector; throws InvalidArgument unless `psi` is a product state.
double fidelity_via_local_rotation(const QuantumState& state, const ComplexVector& psi);
/// Splits a product state into its single-qubit factors; throws when it is entangled.
std::vector<Vector2c> product_factors(const ComplexVector& psi, int qubit_count, double tolerance = 1e-9);

/// P(phi) = offset - (C / 2) cos(phi - phi0).
struct RamseyFit {
  double phase = 0.0;  // phi0 in [0, 2 pi)
  double contrast = 0.0;
  double offset = 0.0;
  double rms_residual = 0.0;
};

/// Linear least squares over {1, cos, sin}. Throws InvalidArgument with fewer than four points
/// or a phase span under pi, ConvergenceError when the contrast is below `contrast_floor`.
RamseyFit ramsey_fit(std::span<const double> phases, std::span<const double> probabilities,
                     double contrast_floor = 1e-6);

/// 1/2 + (C/2) cos(phi0 - phi*) for an equatorial target (|0> + e^{i beta}|1>)/sqrt 2, where the
/// expected fringe minimum is phi* = beta - pi/2.
double single_qubit_fidelity(const RamseyFit& fit, double target_bloch_phase);

/// Azimuth beta of an equatorial single-qubit state; throws unless |amplitudes| are equal.
double equatorial_phase(const Vector2c& v, double tolerance = 1e-9);

double sso(const OutcomeDistribution& p, const OutcomeDistribution& q);
double distinguishability(const OutcomeDistribution& p, const OutcomeDistribution& q);

struct FidelityReport {
  enum class Method { Direct, RotationProtocol, RamseyFit };
  double fidelity = 0.0;
  std::vector<double> single_qubit;
  double product = 0.0;
  Method method = Method::Direct;
  double uncertainty = 0.0;
};
std::string to_string(FidelityReport::Method m);

struct ErrorBudget {
  double f_dephased = 0.0;
  double zeta = 0.0;
  double readout_fidelity = 0.0;
  double f_tilde = 0.0;               // zeta / 2^N + (1 - zeta) F_dephased
  double white_noise_ceiling = 0.0;   // F_tilde at F_dephased = 1
  double white_noise_infidelity = 0.0;
  double detection_infidelity = 0.0;  // 1 - r^N
  double residual_dd_infidelity = 0.0;
};

ErrorBudget error_budget(double f_dephased, double zeta, double readout_fidelity, int qubit_count = 3);

}  // namespace magic::metrics
