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

#include "magic/chain.hpp"

#include <cmath>
#include <sstream>

#include "magic/error.hpp"

namespace magic::chain {
namespace {

double scaled_potential(std::span<const double> u) {
  double v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v += 0.5 * u[i] * u[i];
    for (std::size_t j = i + 1; j < u.size(); ++j) v += 1.0 / std::abs(u[j] - u[i]);
  }
  return v;
}

bool strictly_increasing(const std::vector<double>& u) {
  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i] > u[i - 1])) return false;
  return true;
}

}  // namespace

void TrapConfig::validate() const {
  if (ion_count < 1) throw InvalidArgument("ion_count must be at least 1");
  if (!(axial_frequency > 0.0)) throw InvalidArgument("axial_frequency must be positive");
  if (!(ion_mass > 0.0)) throw InvalidArgument("ion_mass must be positive");
  if (!(charge > 0.0)) throw InvalidArgument("charge must be positive");
  if (!std::isfinite(magnetic_gradient)) throw InvalidArgument("magnetic_gradient must be finite");
}

TrapConfig TrapConfig::from_config(const KeyValueConfig& config) {
  TrapConfig t;
  const std::string s = "trap";
  t.ion_count = static_cast<int>(config.get_int(s, "ion_count", t.ion_count));
  t.ion_mass = config.get_double(s, "ion_mass_amu", constants::kYb171MassAmu) *
               constants::kAtomicMassUnit;
  t.axial_frequency = config.get_double(s, "axial_frequency", t.axial_frequency);
  t.magnetic_gradient = config.get_double(s, "magnetic_gradient", t.magnetic_gradient);
  t.bias_field = config.get_double(s, "bias_field", t.bias_field);
  t.reference_coordinate = config.get_double(s, "reference_coordinate", t.reference_coordinate);
  t.charge = config.get_double(s, "charge_e", 1.0) * constants::kElementaryCharge;
  t.g_factor = config.get_double(s, "g_factor", t.g_factor);
  try {
    t.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(config.source(), config.line_of(s, "ion_count"), e.what());
  }
  return t;
}

double length_scale(const TrapConfig& config) {
  const double nu = config.axial_frequency;
  return std::cbrt(constants::kCoulombConstant * config.charge * config.charge /
                   (config.ion_mass * nu * nu));
}

RealVector scaled_gradient(std::span<const double> u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  RealVector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double gi = u[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = u[i] - u[j];
      gi -= (d > 0 ? 1.0 : -1.0) / (d * d);
    }
    g(i) = gi;
  }
  return g;
}

RealMatrix scaled_hessian(std::span<const double> u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  RealMatrix h = RealMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double k = 2.0 / std::pow(std::abs(u[i] - u[j]), 3);
      h(i, i) += k;
      h(i, j) = -k;
    }
  }
  return h;
}

ChainGeometry equilibrium_positions(const TrapConfig& config) {
  config.validate();
  const int n = config.ion_count;
  ChainGeometry geo;
  geo.length_scale = length_scale(config);

  std::vector<double> u(n, 0.0);
  if (n > 1) {
    const double spacing = 2.018 * std::pow(static_cast<double>(n), -0.559);
    for (int i = 0; i < n; ++i) u[i] = (i - 0.5 * (n - 1)) * spacing;
  }

  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 200;
  RealVector g = scaled_gradient(u);
  double energy = scaled_potential(u);
  int it = 0;
  while (g.norm() >= kTolerance) {
    if (++it > kMaxIterations) {
      std::ostringstream msg;
      msg << "equilibrium solver did not converge for " << n << " ions after " << kMaxIterations
          << " iterations (gradient norm " << g.norm() << ", potential " << energy << ")";
      throw ConvergenceError(msg.str());
    }
    const RealVector step = scaled_hessian(u).ldlt().solve(-g);
    double lambda = 1.0;
    std::vector<double> trial(n);
    for (int halvings = 0;; ++halvings) {
      for (int i = 0; i < n; ++i) trial[i] = u[i] + lambda * step(i);
      const double e = strictly_increasing(trial) ? scaled_potential(trial) : INFINITY;
      // Near the minimum the energy change drops below rounding; accept the full step there.
      if (e <= energy + 1e-14 * std::abs(energy)) {
        energy = e;
        break;
      }
      if (halvings == 60) {
        std::ostringstream msg;
        msg << "equilibrium line search stalled at iteration " << it << " (gradient norm "
            << g.norm() << ")";
        throw ConvergenceError(msg.str());
      }
      lambda *= 0.5;
    }
    u = trial;
    g = scaled_gradient(u);
  }
  // Center of mass exactly at the trap center.
  double mean = 0.0;
  for (double x : u) mean += x;
  mean /= n;
  for (double& x : u) x -= mean;

  geo.iterations = it;
  geo.scaled = u;
  geo.positions.resize(n);
  for (int i = 0; i < n; ++i) geo.positions[i] = config.reference_coordinate + geo.length_scale * u[i];
  return geo;
}

ModeDecomposition normal_modes(const TrapConfig& config, const ChainGeometry& geometry) {
  const auto n = static_cast<Eigen::Index>(geometry.scaled.size());
  if (n != config.ion_count) throw InvalidArgument("geometry does not match trap ion count");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(scaled_hessian(geometry.scaled));
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hessian diagonalization failed");

  ModeDecomposition modes;
  modes.modes = solver.eigenvectors();
  modes.frequencies.resize(n);
  modes.ground_state_extents.resize(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double lambda = solver.eigenvalues()(m);
    if (!(lambda > 0.0)) {
      throw InvalidArgument("non-positive Hessian eigenvalue " + std::to_string(lambda) +
                            ": geometry is not a potential minimum");
    }
    // Deterministic sign: first significant component positive.
    auto col = modes.modes.col(m);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-9) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
    const double nu = config.axial_frequency * std::sqrt(lambda);
    modes.frequencies[m] = nu;
    modes.ground_state_extents[m] = std::sqrt(constants::kHbar / (2.0 * config.ion_mass * nu));
  }
  // The center-of-mass eigenvalue is exactly one; pin rounding.
  modes.frequencies[0] = config.axial_frequency * std::sqrt(solver.eigenvalues()(0));
  return modes;
}

ZeemanProfile zeeman_profile(const TrapConfig& config, const ChainGeometry& geometry) {
  ZeemanProfile z;
  const double grad_omega =
      config.g_factor * constants::kBohrMagneton * config.magnetic_gradient / constants::kHbar;
  for (double pos : geometry.positions) {
    const double dz = pos - config.reference_coordinate;
    z.fields.push_back(config.bias_field + config.magnetic_gradient * dz);
    z.gradient_sensitivity.push_back(grad_omega);
    z.addressing_offsets.push_back(config.g_factor * constants::kBohrMagneton *
                                   config.magnetic_gradient * dz / constants::kPlanck);
  }
  return z;
}

CouplingMatrix coupling_matrix(const TrapConfig& config, const ModeDecomposition& modes,
                               std::span<const double> sensitivities) {
  const auto n = static_cast<Eigen::Index>(modes.frequencies.size());
  if (static_cast<Eigen::Index>(sensitivities.size()) != n) {
    throw InvalidArgument("need one gradient sensitivity per ion");
  }
  (void)config;
  RealMatrix eps(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index m = 0; m < n; ++m)
      eps(i, m) = sensitivities[i] * modes.ground_state_extents[m] / modes.frequencies[m] *
                  modes.modes(i, m);
  RealMatrix j = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      double sum = 0.0;
      for (Eigen::Index m = 0; m < n; ++m) sum += modes.frequencies[m] * eps(i, m) * eps(k, m);
      j(i, k) = j(k, i) = sum;
    }
  }
  return CouplingMatrix(std::move(j), "trap-derived");
}

CouplingMatrix trap_couplings(const TrapConfig& config) {
  const ChainGeometry geo = equilibrium_positions(config);
  const ModeDecomposition modes = normal_modes(config, geo);
  const ZeemanProfile zeeman = zeeman_profile(config, geo);
  std::vector<double> sens(zeeman.gradient_sensitivity);
  for (double& s : sens) s = -s;  // m_F = -1
  return coupling_matrix(config, modes, sens);
}

}  // namespace magic::chain
