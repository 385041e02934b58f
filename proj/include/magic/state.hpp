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

#include <string>
#include <vector>

#include "magic/basis.hpp"
#include "magic/config.hpp"
#include "magic/types.hpp"

namespace magic {

/// Channel parameters of the simulation model. Rates are in 1/s.
struct NoiseModel {
  double sigma_dephasing_rate = 62.5;  // 0.0625 / ms
  double pi_dephasing_rate = 20.0;     // 1 / (50 ms)
  double white_noise = 0.25;           // zeta
  double readout_fidelity = 0.96;      // per qubit, bright and dark alike

  bool dephasing_enabled = true;
  bool white_noise_enabled = true;
  bool readout_enabled = true;

  static NoiseModel noiseless();
  static NoiseModel calibrated();

  /// Reads the `[noise]` section: sigma_dephasing_rate, pi_dephasing_rate (1/s), white_noise,
  /// readout_fidelity and the three `*_enabled` booleans. Missing keys keep `base` values.
  static NoiseModel from_config(const KeyValueConfig& config, const NoiseModel& base);

  void validate() const;
  double dephasing_rate(Basis basis) const;
  bool any_enabled() const { return dephasing_enabled || white_noise_enabled || readout_enabled; }
};

/// Density matrix on n qubits, the basis each qubit is housed in, and how long each qubit has
/// spent in a superposition during free-evolution windows.
class QuantumState {
 public:
  QuantumState() = default;
  /// Takes ownership of `rho`; throws unless it is a 2^n x 2^n matrix.
  QuantumState(int n, ComplexMatrix rho, std::vector<Basis> bases = {});

  /// |index> with qubit 0 as the most significant bit.
  static QuantumState basis_state(int n, std::size_t index, std::vector<Basis> bases = {});
  static QuantumState pure(const ComplexVector& psi, std::vector<Basis> bases = {});
  static QuantumState product(const std::vector<Vector2c>& factors, std::vector<Basis> bases = {});
  /// Product state from a label over {0, 1, +, -}, e.g. "+01".
  static QuantumState from_label(const std::string& label, std::vector<Basis> bases = {});

  int qubit_count() const { return n_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  const ComplexMatrix& rho() const { return rho_; }
  ComplexMatrix& rho() { return rho_; }

  const std::vector<Basis>& bases() const { return bases_; }
  Basis basis(int q) const { return bases_[q]; }
  void set_basis(int q, Basis b) { bases_[q] = b; }

  const std::vector<double>& exposure() const { return exposure_; }
  void add_exposure(int q, double seconds) { exposure_[q] += seconds; }

  Complex trace() const { return rho_.trace(); }
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Two-by-two reduced density matrix of qubit q.
  Matrix2c reduced(int q) const;
  /// Probability of each computational outcome (diagonal of rho, clipped at zero).
  std::vector<double> populations() const;

  /// Throws InvalidArgument when the trace, Hermiticity or positivity invariants fail.
  void validate(double tolerance = 1e-10) const;

 private:
  int n_ = 0;
  ComplexMatrix rho_;
  std::vector<Basis> bases_;
  std::vector<double> exposure_;
};

/// Single-qubit vector for one of the label characters 0, 1, +, -.
Vector2c label_vector(char c);
/// Tensor product of single-qubit vectors, qubit 0 most significant.
ComplexVector product_vector(const std::vector<Vector2c>& factors);

}  // namespace magic
