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

#include "magic/config.hpp"
#include "magic/constants.hpp"
#include "magic/coupling.hpp"
#include "magic/types.hpp"

namespace magic::chain {

struct TrapConfig {
  int ion_count = 3;
  double ion_mass = constants::kYb171MassAmu * constants::kAtomicMassUnit;  // kg
  double axial_frequency = kTwoPi * 130e3;                                 // rad/s
  double magnetic_gradient = 19.0;                                         // T/m
  double bias_field = 0.0;            // T, field at reference_coordinate
  double reference_coordinate = 0.0;  // m, trap center
  double charge = constants::kElementaryCharge;
  double g_factor = 1.0;

  void validate() const;

  /// Reads the `[trap]` section. Keys: ion_count, ion_mass_amu, axial_frequency (rad/s),
  /// magnetic_gradient (T/m), bias_field (T), reference_coordinate (m), charge_e, g_factor.
  static TrapConfig from_config(const KeyValueConfig& config);
};

struct ChainGeometry {
  std::vector<double> positions;  // m, ascending
  std::vector<double> scaled;     // positions in units of length_scale, relative to the center
  double length_scale = 0.0;      // m
  int iterations = 0;
};

struct ModeDecomposition {
  std::vector<double> frequencies;  // rad/s, ascending
  RealMatrix modes;                 // column n is mode n, orthonormal
  std::vector<double> ground_state_extents;  // m
};

struct ZeemanProfile {
  std::vector<double> fields;               // T
  std::vector<double> gradient_sensitivity; // rad/(s m) for m_F = +1
  std::vector<double> addressing_offsets;   // Hz, relative to the reference coordinate
};

/// (q^2 / (4 pi eps0 m nu^2))^(1/3).
double length_scale(const TrapConfig& config);

/// Gradient of the scaled harmonic-plus-Coulomb potential sum u^2/2 + sum_{i<j} 1/|u_i - u_j|.
RealVector scaled_gradient(std::span<const double> u);
/// Analytic Hessian of the same potential; its eigenvalues are (nu_n / nu_1)^2.
RealMatrix scaled_hessian(std::span<const double> u);

/// Damped Newton from uniform spacing. Throws ConvergenceError with diagnostics.
ChainGeometry equilibrium_positions(const TrapConfig& config);
ModeDecomposition normal_modes(const TrapConfig& config, const ChainGeometry& geometry);
ZeemanProfile zeeman_profile(const TrapConfig& config, const ChainGeometry& geometry);

/// J_ij = sum_n nu_n eps_in eps_jn, eps_in = sensitivity_i * (dz_n / nu_n) * S_in.
CouplingMatrix coupling_matrix(const TrapConfig& config, const ModeDecomposition& modes,
                               std::span<const double> sensitivities);

/// Couplings for a chain with every spin encoded in m_F = -1 (all entries positive).
CouplingMatrix trap_couplings(const TrapConfig& config);

}  // namespace magic::chain
