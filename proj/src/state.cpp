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

#include "magic/state.hpp"

#include <cmath>

#include "magic/error.hpp"
#include "magic/kernels.hpp"

namespace magic {

NoiseModel NoiseModel::noiseless() {
  NoiseModel m;
  m.dephasing_enabled = false;
  m.white_noise_enabled = false;
  m.readout_enabled = false;
  return m;
}

NoiseModel NoiseModel::calibrated() { return NoiseModel{}; }

NoiseModel NoiseModel::from_config(const KeyValueConfig& config, const NoiseModel& base) {
  NoiseModel m = base;
  const std::string s = "noise";
  m.sigma_dephasing_rate = config.get_double(s, "sigma_dephasing_rate", m.sigma_dephasing_rate);
  m.pi_dephasing_rate = config.get_double(s, "pi_dephasing_rate", m.pi_dephasing_rate);
  m.white_noise = config.get_double(s, "white_noise", m.white_noise);
  m.readout_fidelity = config.get_double(s, "readout_fidelity", m.readout_fidelity);
  m.dephasing_enabled = config.get_bool(s, "dephasing_enabled", m.dephasing_enabled);
  m.white_noise_enabled = config.get_bool(s, "white_noise_enabled", m.white_noise_enabled);
  m.readout_enabled = config.get_bool(s, "readout_enabled", m.readout_enabled);
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  if (!(sigma_dephasing_rate >= 0) || !(pi_dephasing_rate >= 0))
    throw InvalidArgument("dephasing rates must be non-negative");
  if (!(white_noise >= 0 && white_noise <= 1)) throw InvalidArgument("white noise zeta must lie in [0, 1]");
  if (!(readout_fidelity >= 0 && readout_fidelity <= 1))
    throw InvalidArgument("readout fidelity must lie in [0, 1]");
}

double NoiseModel::dephasing_rate(Basis basis) const {
  return basis == Basis::Pi ? pi_dephasing_rate : sigma_dephasing_rate;
}

QuantumState::QuantumState(int n, ComplexMatrix rho, std::vector<Basis> bases)
    : n_(n), rho_(std::move(rho)), bases_(std::move(bases)), exposure_(n, 0.0) {
  if (n < 1 || n > 14) throw InvalidArgument("register size must lie in [1, 14]");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho_.rows() != dim || rho_.cols() != dim)
    throw InvalidArgument("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  if (bases_.empty()) bases_.assign(n, Basis::SigmaMinus);
  if (static_cast<int>(bases_.size()) != n) throw InvalidArgument("one basis tag per qubit required");
}

QuantumState QuantumState::basis_state(int n, std::size_t index, std::vector<Basis> bases) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (static_cast<Eigen::Index>(index) >= dim) throw InvalidArgument("basis index out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(n, std::move(rho), std::move(bases));
}

QuantumState QuantumState::pure(const ComplexVector& psi, std::vector<Basis> bases) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("state vector is not normalized");
  int n = 0;
  while ((Eigen::Index{1} << n) < psi.size()) ++n;
  if ((Eigen::Index{1} << n) != psi.size()) throw InvalidArgument("state vector length is not a power of two");
  return QuantumState(n, psi * psi.adjoint(), std::move(bases));
}

QuantumState QuantumState::product(const std::vector<Vector2c>& factors, std::vector<Basis> bases) {
  return pure(product_vector(factors), std::move(bases));
}

QuantumState QuantumState::from_label(const std::string& label, std::vector<Basis> bases) {
  std::vector<Vector2c> f;
  for (char c : label) f.push_back(label_vector(c));
  return product(f, std::move(bases));
}

double QuantumState::purity() const { return (rho_ * rho_).trace().real(); }

double QuantumState::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double QuantumState::min_eigenvalue() const {
  const ComplexMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix2c QuantumState::reduced(int q) const {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit index out of range");
  const Eigen::Index dim = dimension();
  const Eigen::Index mask = Eigen::Index{1} << kernels::bit_of(q, n_);
  Matrix2c r = Matrix2c::Zero();
  for (Eigen::Index a = 0; a < dim; ++a) {
    if (a & mask) continue;
    const Eigen::Index b = a | mask;
    r(0, 0) += rho_(a, a);
    r(1, 1) += rho_(b, b);
    r(0, 1) += rho_(a, b);
    r(1, 0) += rho_(b, a);
  }
  return r;
}

std::vector<double> QuantumState::populations() const {
  std::vector<double> p(static_cast<std::size_t>(dimension()));
  for (Eigen::Index a = 0; a < dimension(); ++a) p[static_cast<std::size_t>(a)] = std::max(0.0, rho_(a, a).real());
  return p;
}

void QuantumState::validate(double tolerance) const {
  if (std::abs(trace() - Complex(1.0)) > tolerance)
    throw InvalidArgument("density matrix trace deviates from one");
  if (hermiticity_error() > 100 * tolerance) throw InvalidArgument("density matrix is not Hermitian");
  if (min_eigenvalue() < -tolerance) throw InvalidArgument("density matrix has a negative eigenvalue");
}

Vector2c label_vector(char c) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (c) {
    case '0': return Vector2c(1, 0);
    case '1': return Vector2c(0, 1);
    case '+': return Vector2c(h, h);
    case '-': return Vector2c(h, -h);
    default: throw InvalidArgument(std::string("unknown state label character '") + c + "'");
  }
}

ComplexVector product_vector(const std::vector<Vector2c>& factors) {
  if (factors.empty()) throw InvalidArgument("product state needs at least one factor");
  ComplexVector v = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    ComplexVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * f(0);
      next(2 * i + 1) = v(i) * f(1);
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace magic
