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

#include "magic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "magic/error.hpp"
#include "magic/gates.hpp"
#include "magic/kernels.hpp"

namespace magic::metrics {

void OutcomeDistribution::validate() const {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw InvalidArgument("outcome probabilities must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("outcome probabilities do not sum to one");
}

namespace {

int qubits_for(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw InvalidArgument("outcome count is not a power of two");
  return n;
}

std::size_t logical_index(std::size_t physical, int n, std::span<const int> relabel) {
  if (relabel.empty()) return physical;
  std::size_t out = 0;
  for (int q = 0; q < n; ++q)
    if (physical >> kernels::bit_of(q, n) & 1u) out |= std::size_t{1} << kernels::bit_of(relabel[q], n);
  return out;
}

void check_lengths(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  if (p.size() != q.size()) {
    throw InvalidArgument("distribution lengths differ (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + ")");
  }
}

}  // namespace

OutcomeDistribution outcome_distribution(const QuantumState& state, std::span<const int> relabel,
                                         std::string label) {
  const int n = state.qubit_count();
  if (!relabel.empty() && static_cast<int>(relabel.size()) != n)
    throw InvalidArgument("relabel length does not match the register");
  const auto pop = state.populations();
  OutcomeDistribution d;
  d.label = std::move(label);
  d.p.assign(pop.size(), 0.0);
  for (std::size_t a = 0; a < pop.size(); ++a) d.p[logical_index(a, n, relabel)] += pop[a];
  const double sum = std::accumulate(d.p.begin(), d.p.end(), 0.0);
  for (double& x : d.p) x /= sum;
  return d;
}

OutcomeDistribution apply_readout_confusion(const OutcomeDistribution& d, int qubit_count,
                                            double readout_fidelity) {
  if (qubits_for(d.p.size()) != qubit_count) throw InvalidArgument("outcome count does not match the qubit count");
  OutcomeDistribution out = d;
  for (int q = 0; q < qubit_count; ++q) {
    const std::size_t mask = std::size_t{1} << kernels::bit_of(q, qubit_count);
    std::vector<double> next(out.p.size());
    for (std::size_t a = 0; a < out.p.size(); ++a)
      next[a] = readout_fidelity * out.p[a] + (1.0 - readout_fidelity) * out.p[a ^ mask];
    out.p = std::move(next);
  }
  return out;
}

OutcomeDistribution sample(const OutcomeDistribution& d, long shots, CounterRng& rng) {
  if (shots <= 0) throw InvalidArgument("shot count must be positive");
  const auto counts = rng.multinomial(shots, d.p);
  OutcomeDistribution out;
  out.label = d.label;
  out.shots = shots;
  for (long c : counts) out.p.push_back(static_cast<double>(c) / static_cast<double>(shots));
  return out;
}

ComplexMatrix relabel_matrix(int qubit_count, std::span<const int> relabel) {
  const std::size_t dim = std::size_t{1} << qubit_count;
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) p(logical_index(a, qubit_count, relabel), a) = 1.0;
  return p;
}

double state_fidelity(const ComplexMatrix& rho, const ComplexVector& psi) {
  if (psi.size() != rho.rows()) throw InvalidArgument("target dimension does not match the state");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw InvalidArgument("target state is not normalized");
  return std::clamp((psi.adjoint() * rho * psi)(0, 0).real(), 0.0, 1.0);
}

double state_fidelity(const QuantumState& state, const ComplexVector& psi) {
  return state_fidelity(state.rho(), psi);
}

LocalRotation rotation_to(const Vector2c& target) {
  const double norm = target.norm();
  if (norm < 1e-15) throw InvalidArgument("zero single-qubit target");
  Vector2c v = target / norm;
  if (std::abs(v(0)) > 1e-15) v *= std::exp(Complex(0, -std::arg(v(0))));
  LocalRotation r;
  r.theta = 2.0 * std::atan2(std::abs(v(1)), std::abs(v(0)));
  r.phi = std::abs(v(1)) > 1e-15 ? std::arg(v(1)) + kPi / 2 : 0.0;
  return r;
}

double fidelity_via_local_rotation(const QuantumState& state, const std::vector<Vector2c>& factors) {
  const int n = state.qubit_count();
  if (static_cast<int>(factors.size()) != n) throw InvalidArgument("one target factor per qubit required");
  ComplexMatrix rho = state.rho();
  for (int q = 0; q < n; ++q) {
    const auto r = rotation_to(factors[q]);
    kernels::conjugate_one_qubit(rho, n, q, gates::rotation(r.theta, r.phi).adjoint());
  }
  return std::clamp(rho(0, 0).real(), 0.0, 1.0);
}

double fidelity_via_local_rotation(const QuantumState& state, const ComplexVector& psi) {
  return fidelity_via_local_rotation(state, product_factors(psi, state.qubit_count()));
}

std::vector<Vector2c> product_factors(const ComplexVector& psi, int qubit_count, double tolerance) {
  Eigen::Index anchor = 0;
  psi.cwiseAbs().maxCoeff(&anchor);
  std::vector<Vector2c> factors;
  for (int q = 0; q < qubit_count; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << kernels::bit_of(q, qubit_count);
    Vector2c f(psi(anchor & ~mask), psi(anchor | mask));
    factors.push_back(f / f.norm());
  }
  const ComplexVector rebuilt = product_vector(factors);
  const double overlap = std::abs(rebuilt.dot(psi)) / psi.norm();
  if (std::abs(overlap - 1.0) > tolerance)
    throw InvalidArgument("target state is entangled; the local-rotation protocol needs a product state");
  return factors;
}

RamseyFit ramsey_fit(std::span<const double> phases, std::span<const double> probabilities,
                     double contrast_floor) {
  if (phases.size() != probabilities.size()) throw InvalidArgument("fringe phases and probabilities differ in length");
  if (phases.size() < 4) throw InvalidArgument("a Ramsey fit needs at least four phase points");
  const auto [lo, hi] = std::minmax_element(phases.begin(), phases.end());
  if (*hi - *lo < kPi - 1e-12) throw InvalidArgument("fringe phases must span at least pi");

  const Eigen::Index m = static_cast<Eigen::Index>(phases.size());
  RealMatrix a(m, 3);
  RealVector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = std::cos(phases[i]);
    a(i, 2) = std::sin(phases[i]);
    y(i) = probabilities[i];
  }
  const RealVector c = a.colPivHouseholderQr().solve(y);
  RamseyFit fit;
  fit.offset = c(0);
  fit.contrast = 2.0 * std::hypot(c(1), c(2));
  if (fit.contrast < contrast_floor) {
    throw ConvergenceError("degenerate Ramsey fringe: fitted contrast " + std::to_string(fit.contrast) +
                           " is below the floor " + std::to_string(contrast_floor));
  }
  double phase = std::atan2(-c(2), -c(1));
  if (phase < 0) phase += kTwoPi;
  fit.phase = phase;
  fit.rms_residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(m));
  return fit;
}

double single_qubit_fidelity(const RamseyFit& fit, double target_bloch_phase) {
  const double expected_minimum = target_bloch_phase - kPi / 2;
  return std::clamp(0.5 + 0.5 * fit.contrast * std::cos(fit.phase - expected_minimum), 0.0, 1.0);
}

double equatorial_phase(const Vector2c& v, double tolerance) {
  const double n = v.norm();
  if (std::abs(std::abs(v(0)) - std::abs(v(1))) > tolerance * n)
    throw InvalidArgument("target is not an equatorial state; Ramsey fidelity is undefined for it");
  return std::arg(v(1)) - std::arg(v(0));
}

double sso(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  check_lengths(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(std::max(0.0, p.p[i] * q.p[i]));
  return std::clamp(s * s, 0.0, 1.0);
}

double distinguishability(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  check_lengths(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p.p[i] - q.p[i]);
  return std::clamp(1.0 - 0.5 * s, 0.0, 1.0);
}

std::string to_string(FidelityReport::Method m) {
  switch (m) {
    case FidelityReport::Method::Direct: return "direct";
    case FidelityReport::Method::RotationProtocol: return "rotation-protocol";
    case FidelityReport::Method::RamseyFit: return "ramsey-fit";
  }
  return "?";
}

ErrorBudget error_budget(double f_dephased, double zeta, double readout_fidelity, int qubit_count) {
  auto unit = [](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  };
  unit(f_dephased, "F_dephased");
  unit(zeta, "zeta");
  unit(readout_fidelity, "readout fidelity");
  const double floor = 1.0 / static_cast<double>(std::size_t{1} << qubit_count);
  ErrorBudget b;
  b.f_dephased = f_dephased;
  b.zeta = zeta;
  b.readout_fidelity = readout_fidelity;
  b.f_tilde = zeta * floor + (1.0 - zeta) * f_dephased;
  b.white_noise_infidelity = zeta * (1.0 - floor);
  b.white_noise_ceiling = 1.0 - b.white_noise_infidelity;
  b.detection_infidelity = 1.0 - std::pow(readout_fidelity, qubit_count);
  b.residual_dd_infidelity = b.white_noise_infidelity - b.detection_infidelity;
  return b;
}

}  // namespace magic::metrics
