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

#include <doctest.h>

#include "magic/engine.hpp"
#include "magic/error.hpp"
#include "magic/metrics.hpp"
#include "oracles.hpp"

using namespace magic;

namespace {

const CouplingMatrix kJ = CouplingMatrix::three_spin(kTwoPi * 31.98, kTwoPi * 18.01, kTwoPi * 33.0);

PulseProgram random_program(std::mt19937_64& g, int n, int length, bool with_dd) {
  std::uniform_int_distribution<int> op(0, 3), q(0, n - 1);
  std::uniform_real_distribution<double> ang(0, kTwoPi), dur(0.1e-3, 2e-3);
  PulseProgram p(n);
  for (int i = 0; i < length; ++i) {
    switch (op(g)) {
      case 0: p.add(Rotate{q(g), ang(g), ang(g)}); break;
      case 1: p.add(PhaseShift{q(g), ang(g)}); break;
      case 2: p.add(FreeEvolve{dur(g), with_dd ? DdSpec{20, DdScheme::Kdd} : DdSpec{}}); break;
      default: p.add(Echo{q(g), ang(g)}); break;
    }
  }
  return p;
}

// Unitary of a program without DD trains, built from the oracle exponentials.
ComplexMatrix oracle_unitary(const PulseProgram& p, const RealMatrix& j) {
  const int n = p.qubit_count;
  ComplexMatrix u = ComplexMatrix::Identity(1 << n, 1 << n);
  for (const auto& op : p.instructions) {
    if (const auto* r = std::get_if<Rotate>(&op)) u = oracle::on(oracle::rot(r->theta, r->phi), n, r->qubit) * u;
    if (const auto* s = std::get_if<PhaseShift>(&op)) u = oracle::on(oracle::zphase(s->phi), n, s->qubit) * u;
    if (const auto* e = std::get_if<Echo>(&op)) u = oracle::on(oracle::rot(kPi, e->phi), n, e->qubit) * u;
    if (const auto* w = std::get_if<FreeEvolve>(&op)) u = oracle::ising(j, w->duration) * u;
  }
  return u;
}

}  // namespace

TEST_CASE("program unitary matches the oracle on random programs") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = random_program(g, 3, 12, false);
    CHECK((program_unitary(p, kJ) - oracle_unitary(p, kJ.matrix())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("density and unitary backends agree without noise") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_program(g, 3, 10, trial % 2 == 0);
    const auto in = QuantumState::from_label("+01");
    const auto r = run_program(p, in, kJ, NoiseModel::noiseless());
    const ComplexMatrix u = program_unitary(p, kJ);
    CHECK((r.state.rho() - u * in.rho() * u.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("decoupling trains are transparent to the Ising dynamics") {
  const double t = 3.7e-3;
  const ComplexMatrix plain = oracle::ising(kJ.matrix(), t);
  struct Case {
    DdSpec dd;
    bool advance;
  };
  const Case cases[] = {{{2, DdScheme::Cpmg}, true},  {{4, DdScheme::Cpmg}, true}, {{20, DdScheme::Cpmg}, true},
                        {{20, DdScheme::Kdd}, true},  {{40, DdScheme::Kdd}, true}, {{10, DdScheme::Kdd}, false},
                        {{20, DdScheme::Kdd}, false}};
  for (const auto& c : cases) {
    CAPTURE(c.dd.pulses);
    PulseProgram p(3);
    p.add(FreeEvolve{t, c.dd});
    EngineOptions o;
    o.kdd_phase_advance = c.advance;
    CHECK(oracle::phase_distance(program_unitary(p, kJ, {}, o), plain) < 1e-10);
  }
}

TEST_CASE("decoupling fragment layout and validation") {
  const auto frag = dd_fragment(20, 2e-3, DdScheme::Kdd, 3);
  int windows = 0, pulses = 0;
  double total = 0;
  for (const auto& op : frag) {
    if (const auto* w = std::get_if<FreeEvolve>(&op)) {
      ++windows;
      total += w->duration;
    }
    pulses += std::holds_alternative<Rotate>(op);
  }
  CHECK(pulses == 60);
  CHECK(windows == 40);
  CHECK(total == doctest::Approx(2e-3).epsilon(1e-12));
  CHECK(dd_fragment(4, 1e-3, DdScheme::Cpmg, 3, {false, true, false}).size() == 4 * (2 + 2));
  CHECK_THROWS_AS(dd_fragment(3, 1e-3, DdScheme::Cpmg, 3), InvalidArgument);
  CHECK_THROWS_AS(dd_fragment(10, 1e-3, DdScheme::Kdd, 3), InvalidArgument);
  CHECK_NOTHROW(dd_fragment(10, 1e-3, DdScheme::Kdd, 3, {}, false));
  const auto ph = dd_phases(5, DdScheme::Kdd, false);
  REQUIRE(ph.size() == 5);
  CHECK(ph[0] == doctest::Approx(kPi / 6));
  CHECK(ph[2] == doctest::Approx(kPi / 2));
}

TEST_CASE("pi-encoded qubits are skipped by the decoupling train") {
  PulseProgram p(2);
  p.add(FreeEvolve{1e-3, {4, DdScheme::Cpmg}});
  const RealMatrix j = CouplingMatrix::three_spin(1, 2, 3).matrix().topLeftCorner(2, 2);
  const auto r = run_program(p, QuantumState::from_label("+0", {Basis::SigmaMinus, Basis::Pi}), CouplingMatrix(j),
                             NoiseModel::noiseless());
  int dd_pulses_on_1 = 0;
  for (const auto& e : r.events)
    if (e.kind == "DD" && e.detail.find("q=2 ") != std::string::npos) ++dd_pulses_on_1;
  CHECK(dd_pulses_on_1 == 0);
}

TEST_CASE("noiseless Ramsey phase rates") {
  const auto phases = phase_grid(37);
  auto rate = [&](const std::string& prep) {
    std::vector<double> t = {0.5e-3, 1e-3, 1.5e-3, 2e-3}, ph;
    for (double x : t) {
      RamseySpec s;
      s.prep = prep;
      s.conditional_time = x;
      s.phases = phases;
      const auto fit = metrics::ramsey_fit(phases, ramsey_scan(s, kJ, NoiseModel::noiseless()).probability);
      ph.push_back(fit.phase);
    }
    // Unwrapped finite differences.
    double acc = 0;
    for (std::size_t i = 1; i < ph.size(); ++i) acc += std::remainder(ph[i] - ph[i - 1], kTwoPi);
    return acc / (t.back() - t.front());
  };
  const double j12 = kJ(0, 1), j13 = kJ(0, 2);
  // Neighbors in |1> = up shift the fringe of qubit 1 by +(J12 + J13) T in this phase convention.
  CHECK(rate("+11") == doctest::Approx(j12 + j13).epsilon(1e-3));
  CHECK(rate("+10") == doctest::Approx(j12 - j13).epsilon(1e-3));
  CHECK(rate("+01") == doctest::Approx(-(j12 - j13)).epsilon(1e-3));
  CHECK(rate("+00") == doctest::Approx(-(j12 + j13)).epsilon(1e-3));
}

TEST_CASE("dephasing under decoupling decays the contrast exponentially") {
  NoiseModel noise = NoiseModel::noiseless();
  noise.dephasing_enabled = true;
  const auto phases = phase_grid(49);
  for (double t : {1e-3, 4e-3}) {
    RamseySpec s;
    s.prep = "+11";
    s.conditional_time = t;
    s.phases = phases;
    s.dd = {20, DdScheme::Kdd};
    const auto fit = metrics::ramsey_fit(phases, ramsey_scan(s, kJ, noise).probability);
    CHECK(fit.contrast == doctest::Approx(std::exp(-noise.sigma_dephasing_rate * t)).epsilon(1e-3));
  }
  // The pi basis dephases at its own rate.
  QuantumState st = QuantumState::from_label("+", {Basis::Pi});
  PulseProgram p(1);
  p.add(FreeEvolve{10e-3, {}});
  const auto r = run_program(p, st, CouplingMatrix::zero(1), noise);
  CHECK(2 * std::abs(r.state.rho()(0, 1)) == doctest::Approx(std::exp(-noise.pi_dephasing_rate * 10e-3)).epsilon(1e-12));
}

TEST_CASE("readout confusion enters Ramsey probabilities") {
  NoiseModel noise = NoiseModel::noiseless();
  noise.readout_enabled = true;
  RamseySpec s;
  s.prep = "+00";
  s.phases = phase_grid(25);
  const auto fit = metrics::ramsey_fit(s.phases, ramsey_scan(s, kJ, noise).probability);
  CHECK(fit.contrast == doctest::Approx(2 * noise.readout_fidelity - 1).epsilon(1e-12));
  s.shots = 50;
  s.seed = 3;
  const auto a = ramsey_scan(s, kJ, noise), b = ramsey_scan(s, kJ, noise);
  CHECK(a.sampled == b.sampled);
  s.prep = "++0";
  CHECK(!ramsey_scan(s, kJ, noise).flags.empty());
}

TEST_CASE("noisy evolution keeps the density matrix physical") {
  std::mt19937_64 g(13);
  EngineOptions finite;
  finite.finite_pulses = true;
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_program(g, 3, 15, trial % 2 == 1);
    p.add(Measure{});
    const auto r = run_program(p, QuantumState::from_label("+1+"), kJ, NoiseModel::calibrated(), finite);
    CHECK_NOTHROW(r.state.validate(1e-10));
    CHECK(r.measured);
    CHECK(r.state.purity() < 1.0);
  }
}

TEST_CASE("finite pulses only add dephasing") {
  std::mt19937_64 g(14);
  const auto p = random_program(g, 3, 10, false);
  EngineOptions finite;
  finite.finite_pulses = true;
  const auto in = QuantumState::from_label("++1");
  const auto a = run_program(p, in, kJ, NoiseModel::noiseless(), finite);
  const auto b = run_program(p, in, kJ, NoiseModel::noiseless());
  CHECK((a.state.rho() - b.state.rho()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(a.elapsed > b.elapsed);
}

TEST_CASE("white noise is applied once at the end") {
  NoiseModel noise = NoiseModel::noiseless();
  noise.white_noise_enabled = true;
  PulseProgram p(3);
  p.add(FreeEvolve{1e-3, {}});
  p.add(FreeEvolve{1e-3, {}});
  const auto r = run_program(p, QuantumState::basis_state(3, 0), kJ, noise);
  CHECK(r.state.rho()(0, 0).real() == doctest::Approx(0.75 + 0.25 / 8).epsilon(1e-14));
}

TEST_CASE("engine error paths") {
  RealMatrix asym = kJ.matrix();
  asym(0, 1) += 1.0;
  QuantumState s = QuantumState::basis_state(3, 0);
  CHECK_THROWS_AS(free_evolution(s, asym, 1e-3), InvalidArgument);
  CHECK_THROWS_AS(free_evolution(s, kJ, -1e-3), InvalidArgument);
  CHECK_NOTHROW(free_evolution(s, kJ, 0.0));
  PulseProgram bad(3);
  bad.add(Rotate{3, kPi, 0});
  CHECK_THROWS_AS(run_program(bad, s, kJ, NoiseModel::noiseless()), InvalidArgument);
  PulseProgram twice(3);
  twice.add(TransferBasis{0, Basis::SigmaMinus, {}});
  CHECK_THROWS_AS(run_program(twice, s, kJ, NoiseModel::noiseless()), InvalidArgument);
  CHECK_THROWS_AS(QuantumState(2, ComplexMatrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("state helpers") {
  const auto s = QuantumState::from_label("+01");
  CHECK(s.purity() == doctest::Approx(1.0));
  CHECK(s.hermiticity_error() < 1e-15);
  CHECK(s.min_eigenvalue() > -1e-12);
  const auto pops = s.populations();
  CHECK(pops[1] == doctest::Approx(0.5));
  CHECK(pops[5] == doctest::Approx(0.5));
  CHECK(std::abs(s.reduced(0)(0, 1) - 0.5) < 1e-15);
  CHECK_THROWS_AS(QuantumState::from_label("+x1"), InvalidArgument);
}
