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
#include "magic/qft.hpp"
#include "oracles.hpp"

using namespace magic;
using namespace magic::qft;

namespace {

const CouplingMatrix& cal() { return calibrated_couplings(); }

// Hand-optimized reference sequence, in time order.
PulseProgram literal_optimized(const Times& t, const EntanglingParams& e) {
  PulseProgram p(3);
  p.relabel = {2, 1, 0};
  p.add(Rotate{0, kPi, 0});
  p.add(Rotate{0, kPi / 2, -kPi / 2});
  p.add(FreeEvolve{t.t1, {}});
  p.add(Rotate{2, kPi, 13 * kPi / 16});
  p.add(Rotate{1, kPi, 0});
  p.add(Rotate{1, e.a1, 3 * kPi / 4});
  p.add(FreeEvolve{e.t3 / 2, {}});
  p.add(Rotate{0, kPi, kPi / 2});
  p.add(FreeEvolve{e.t3 / 2, {}});
  p.add(Rotate{0, kPi, 27 * kPi / 16});
  p.add(Rotate{2, kPi / 2, 3 * kPi / 2});
  p.add(Rotate{1, e.a2, 3 * kPi / 4});
  p.add(Measure{});
  return p;
}

}  // namespace

TEST_CASE("reference QFT") {
  for (int d : {2, 4, 8}) {
    const ComplexMatrix f = reference_qft(d);
    CHECK((f - oracle::qft(d)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((f.adjoint() * f - ComplexMatrix::Identity(d, d)).norm() < 1e-13);
  }
  CHECK(process_fidelity(reference_qft(8), Complex(0, 1) * reference_qft(8)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("calibrated couplings and compiled parameters") {
  CHECK(cal()(0, 1) / kTwoPi == doctest::Approx(31.98).epsilon(1e-12));
  CHECK(cal()(0, 2) / kTwoPi == doctest::Approx(18.01).epsilon(1e-12));
  const auto t = plan_times(cal());
  CHECK(t.branch == 0);
  CHECK(t.t1 == doctest::Approx(3.69e-3).epsilon(0.01));
  CHECK(t.t2 == doctest::Approx(0.22e-3).epsilon(0.01));
  const auto e = solve_entangling_params(cal());
  CHECK(e.t3 == doctest::Approx(4.87e-3).epsilon(1e-6));
  CHECK(e.a1 / kPi == doctest::Approx(0.686).epsilon(0.01));
  CHECK(e.a2 / kPi == doctest::Approx(0.716).epsilon(0.01));
  CHECK(residuals(e.t3, e.a1, e.a2, cal()(1, 2), e.alpha).norm() < 1e-9);
}

TEST_CASE("first windows invert the phase conditions") {
  const auto j = CouplingMatrix::three_spin(200, 120, 210);
  const auto t = plan_times(j);
  const double phi12 = (j(0, 1) * (t.t1 + t.t2)) / 2, phi13 = (j(0, 2) * (t.t2 - t.t1)) / 2;
  CHECK(phi12 == doctest::Approx(kPi / 8 + t.branch * kPi));
  CHECK(phi13 == doctest::Approx(-kPi / 16));
  // With J12 well above 2 J13 the m = 0 branch gives T2 < 0.
  const auto wide = plan_times(CouplingMatrix::three_spin(400, 50, 210));
  CHECK(wide.t1 >= 0);
  CHECK(wide.t2 >= 0);
  CHECK(wide.branch == 1);
  CHECK_THROWS_AS(plan_times(CouplingMatrix::three_spin(0, 50, 210)), InvalidArgument);
  CHECK_THROWS_AS(plan_times(CouplingMatrix::three_spin(50, 0, 210)), InvalidArgument);
}

TEST_CASE("residual Jacobian matches finite differences") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u(0.2, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t3 = u(g) * 1e-3, a1 = u(g), a2 = u(g), j23 = 200 * u(g), alpha = u(g) / 2;
    const auto jac = residual_jacobian(t3, a1, a2, j23, alpha);
    const double h[3] = {1e-9, 1e-6, 1e-6};
    for (int c = 0; c < 3; ++c) {
      double x[3] = {t3, a1, a2}, y[3] = {t3, a1, a2};
      x[c] += h[c];
      y[c] -= h[c];
      const Eigen::Vector4d fd =
          (residuals(x[0], x[1], x[2], j23, alpha) - residuals(y[0], y[1], y[2], j23, alpha)) / (2 * h[c]);
      CHECK((jac.col(c) - fd).norm() < 1e-5 * (1 + fd.norm()));
    }
  }
}

TEST_CASE("exact sequence reproduces the QFT") {
  const auto plan = compile_qft(cal(), standard_decoupling());
  CHECK(plan.exact_infidelity <= 1e-8);
  CHECK(1 - process_fidelity(reference_qft(8), logical_unitary(plan.exact, cal())) <= 1e-8);
  CHECK(plan.optimized_infidelity <= 5e-3);
  CHECK(plan.optimized_infidelity > 1e-4);
  CHECK(plan.optimized.pulse_count() == 9);
  CHECK(plan.optimized.evolution_time() == doctest::Approx(plan.times.t1 + plan.params.t3).epsilon(1e-12));
  CHECK(plan.exact.evolution_time() ==
        doctest::Approx(plan.times.t1 + plan.times.t2 + plan.params.t3).epsilon(1e-12));
  const auto report = verify_plan(plan.exact, cal(), 1e-8);
  CHECK(report.passed);
  CHECK(report.basis.size() == 8);
  CHECK(report.superposition.size() == 7);
}

TEST_CASE("optimized form equals the hand-optimized sequence") {
  const auto t = plan_times(cal());
  const auto e = solve_entangling_params(cal());
  const auto opt = emit_sequence(t, e, Form::Optimized);
  const auto lit = literal_optimized(t, e);
  CHECK(oracle::phase_distance(logical_unitary(opt, cal()), logical_unitary(lit, cal())) < 1e-9);
  CHECK(opt.pulse_count() == lit.pulse_count());
}

TEST_CASE("compilation succeeds for random couplings") {
  std::mt19937_64 g(32);
  std::uniform_real_distribution<double> u(10.0, 60.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto j = CouplingMatrix::three_spin(kTwoPi * u(g), kTwoPi * u(g), kTwoPi * u(g));
    CAPTURE(j.matrix());
    const auto plan = compile_qft(j);
    CHECK(plan.exact_infidelity <= 1e-8);
    CHECK(plan.params.t3 > 0);
  }
}

TEST_CASE("scaling J scales every time and keeps the angles") {
  const auto e1 = solve_entangling_params(cal());
  const auto t1 = plan_times(cal());
  const double s = 1.7;
  const auto e2 = solve_entangling_params(cal().scaled(s));
  const auto t2 = plan_times(cal().scaled(s));
  CHECK(e2.t3 * s == doctest::Approx(e1.t3).epsilon(1e-9));
  CHECK(t2.t1 * s == doctest::Approx(t1.t1).epsilon(1e-12));
  CHECK(e2.a1 == doctest::Approx(e1.a1).epsilon(1e-9));
  CHECK(e2.a2 == doctest::Approx(e1.a2).epsilon(1e-9));
}

TEST_CASE("roots are genuine") {
  const auto roots = entangling_roots(cal());
  REQUIRE(!roots.empty());
  for (const auto& r : roots) {
    CHECK(r.a1 > 0);
    CHECK(r.a1 < kTwoPi);
    CHECK(residuals(r.t3, r.a1, r.a2, cal()(1, 2), r.alpha).norm() < 1e-9);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].t3 <= roots[i].t3 + 1e-15);
}

TEST_CASE("output histograms") {
  const auto plan = compile_qft(cal());
  const auto run = [&](const std::string& label) {
    const auto r = run_program(plan.exact, QuantumState::from_label(label), cal(), NoiseModel::noiseless());
    return metrics::outcome_distribution(r.state, plan.exact.relabel);
  };
  const auto flat = run("111");
  for (double p : flat.p) CHECK(std::abs(p - 0.125) < 1e-9);
  const auto peak = run("+++");
  CHECK(std::abs(peak.p[0] - 1.0) < 1e-9);
}

TEST_CASE("serial baseline") {
  const auto b = serial_baseline(cal());
  CHECK(b.duration == doctest::Approx(kPi / 2 / cal()(0, 1) + kPi / 4 / cal()(0, 2) + kPi / 2 / cal()(1, 2)));
  CHECK(b.minimal == doctest::Approx(b.duration / 2));
  CHECK(b.duration > compile_qft(cal()).optimized_duration);
}

TEST_CASE("form parsing") {
  CHECK(parse_form("exact") == Form::Exact);
  CHECK(to_string(Form::Optimized) == "optimized");
  CHECK_THROWS_AS(parse_form("fast"), InvalidArgument);
}
