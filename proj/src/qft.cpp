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

#include "magic/qft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "magic/engine.hpp"
#include "magic/error.hpp"
#include "magic/metrics.hpp"
#include "magic/optimize.hpp"
#include "magic/state.hpp"

namespace magic::qft {

std::string to_string(Form f) { return f == Form::Exact ? "exact" : "optimized"; }

Form parse_form(const std::string& token) {
  if (token == "exact") return Form::Exact;
  if (token == "optimized" || token == "opt") return Form::Optimized;
  throw InvalidArgument("unknown sequence form '" + token + "' (expected exact or optimized)");
}

ComplexMatrix reference_qft(int states) {
  if (states < 2) throw InvalidArgument("QFT needs at least two states");
  ComplexMatrix f(states, states);
  const double norm = 1.0 / std::sqrt(static_cast<double>(states));
  for (int k = 0; k < states; ++k)
    for (int n = 0; n < states; ++n)
      f(k, n) = std::polar(norm, kTwoPi * static_cast<double>((static_cast<long>(n) * k) % states) / states);
  return f;
}

double process_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual) {
  const double d = static_cast<double>(target.rows());
  return std::norm((target.adjoint() * actual).trace()) / (d * d);
}

Times plan_times(const CouplingMatrix& j) {
  if (j.size() != 3) throw InvalidArgument("the QFT compiler needs a three-spin coupling matrix");
  if (j(0, 1) == 0.0) throw InvalidArgument("coupling J12 vanishes; the first window cannot be planned");
  if (j(0, 2) == 0.0) throw InvalidArgument("coupling J13 vanishes; the first window cannot be planned");
  const double phi13 = -kPi / 16;
  std::optional<Times> best;
  for (int step = 0; step <= 64 && !best; ++step) {
    for (int m : {step, -step}) {
      const double phi12 = kPi / 8 + m * kPi;
      Times t{phi12 / j(0, 1) - phi13 / j(0, 2), phi12 / j(0, 1) + phi13 / j(0, 2), m};
      // A negative T2 within rounding is the degenerate J12 = 2 J13 case.
      const double slack = 1e-15 * std::abs(t.t1);
      if (t.t1 >= -slack && t.t2 >= -slack) {
        t.t1 = std::max(t.t1, 0.0);
        t.t2 = std::max(t.t2, 0.0);
        if (!best || t.t1 + t.t2 < best->t1 + best->t2) best = t;
      }
      if (m == 0) break;
    }
  }
  if (!best) throw InvalidArgument("no branch gives non-negative evolution times");
  return *best;
}

namespace {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat43 = Eigen::Matrix<double, 4, 3>;

// Residuals in the dimensionless phase x = J23 T3.
Vec4 residuals_x(double x, double a1, double a2, double alpha) {
  const Complex k1 = std::polar(1.0 / std::sqrt(2.0), kPi * (alpha + 2.0) / 16.0);
  const Complex k2 = std::polar(1.0 / std::sqrt(2.0), kPi * (alpha - 2.0) / 16.0);
  const Complex h = std::polar(1.0, x / 2), f = std::polar(1.0, x);
  const double sa = std::sin(a1 / 2), ca = std::cos(a1 / 2), sb = std::sin(a2 / 2), cb = std::cos(a2 / 2);
  const Complex e1 = k1 * h - sa * sb * f + ca * cb;
  const Complex e2 = k2 * h - sa * cb * f - ca * sb;
  return Vec4(e1.real(), e1.imag(), e2.real(), e2.imag());
}

Mat43 jacobian_x(double x, double a1, double a2, double alpha) {
  const Complex i(0, 1);
  const Complex k1 = std::polar(1.0 / std::sqrt(2.0), kPi * (alpha + 2.0) / 16.0);
  const Complex k2 = std::polar(1.0 / std::sqrt(2.0), kPi * (alpha - 2.0) / 16.0);
  const Complex h = std::polar(1.0, x / 2), f = std::polar(1.0, x);
  const double sa = std::sin(a1 / 2), ca = std::cos(a1 / 2), sb = std::sin(a2 / 2), cb = std::cos(a2 / 2);
  const Complex d1[3] = {0.5 * i * k1 * h - i * sa * sb * f, 0.5 * (-ca * sb * f - sa * cb),
                         0.5 * (-sa * cb * f - ca * sb)};
  const Complex d2[3] = {0.5 * i * k2 * h - i * sa * cb * f, 0.5 * (-ca * cb * f + sa * sb),
                         0.5 * (sa * sb * f - ca * cb)};
  Mat43 jac;
  for (int c = 0; c < 3; ++c) {
    jac(0, c) = d1[c].real();
    jac(1, c) = d1[c].imag();
    jac(2, c) = d2[c].real();
    jac(3, c) = d2[c].imag();
  }
  return jac;
}

struct Start {
  Vec3 y;
  double norm = std::numeric_limits<double>::infinity();
};

// Levenberg-damped Gauss-Newton on the four real residuals.
Start newton(Vec3 y, double alpha, int max_iterations) {
  Vec4 r = residuals_x(y(0), y(1), y(2), alpha);
  double norm = r.norm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iterations && norm > 1e-15; ++it) {
    const Mat43 jac = jacobian_x(y(0), y(1), y(2), alpha);
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Vec3 g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      const Vec3 step = (jtj + lambda * Eigen::Matrix3d::Identity()).ldlt().solve(-g);
      const Vec3 trial = y + step;
      const Vec4 rt = residuals_x(trial(0), trial(1), trial(2), alpha);
      if (rt.norm() < norm) {
        y = trial;
        r = rt;
        norm = rt.norm();
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10;
    }
    if (!improved) break;
  }
  return {y, norm};
}

double wrap_open(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

void check_pair(const CouplingMatrix& j) {
  if (j.size() != 3) throw InvalidArgument("the QFT compiler needs a three-spin coupling matrix");
  if (j(1, 2) == 0.0) throw InvalidArgument("coupling J23 vanishes; the entangling window has no solution");
  if (j(0, 2) == 0.0) throw InvalidArgument("coupling J13 vanishes; alpha = J23/J13 is undefined");
}

}  // namespace

Eigen::Vector4d residuals(double t3, double a1, double a2, double j23, double alpha) {
  return residuals_x(j23 * t3, a1, a2, alpha);
}

Eigen::Matrix<double, 4, 3> residual_jacobian(double t3, double a1, double a2, double j23, double alpha) {
  Mat43 jac = jacobian_x(j23 * t3, a1, a2, alpha);
  jac.col(0) *= j23;
  return jac;
}

std::vector<EntanglingParams> entangling_roots(const CouplingMatrix& j, const SolverOptions& options) {
  check_pair(j);
  const double j23 = j(1, 2), alpha = j23 / j(0, 2);
  const double sign = j23 > 0 ? 1.0 : -1.0;
  const int g = options.grid;
  const int total = g * g * g;
  std::vector<Start> results(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(static)
  for (int s = 0; s < total; ++s) {
    const int it3 = s / (g * g), ia1 = (s / g) % g, ia2 = s % g;
    const Vec3 y0(sign * 4.0 * kPi * (it3 + 1) / g, kTwoPi * (ia1 + 0.5) / g, kTwoPi * (ia2 + 0.5) / g);
    results[static_cast<std::size_t>(s)] = newton(y0, alpha, options.max_iterations);
  }

  std::vector<EntanglingParams> roots;
  for (const auto& r : results) {
    if (r.norm > options.residual_tolerance) continue;
    const double x = r.y(0);
    if (x * sign <= 0) continue;
    // Shifting both angles by 2 pi leaves the equations unchanged; shifting one does not.
    const double a1 = wrap_open(r.y(1)), a2 = wrap_open(r.y(2));
    if (a1 <= 0 || a2 <= 0) continue;
    const double norm = residuals_x(x, a1, a2, alpha).norm();
    if (norm > options.residual_tolerance) continue;
    EntanglingParams p{x / j23, a1, a2, alpha, norm};
    const bool seen = std::any_of(roots.begin(), roots.end(), [&](const EntanglingParams& q) {
      return std::abs((q.t3 - p.t3) * j23) < 1e-6 && std::abs(q.a1 - p.a1) < 1e-6 && std::abs(q.a2 - p.a2) < 1e-6;
    });
    if (!seen) roots.push_back(p);
  }
  std::sort(roots.begin(), roots.end(), [](const EntanglingParams& a, const EntanglingParams& b) {
    if (std::abs(a.t3 - b.t3) > 1e-12 * std::max(a.t3, b.t3)) return a.t3 < b.t3;
    return a.a1 + a.a2 < b.a1 + b.a2;
  });
  return roots;
}

EntanglingParams solve_entangling_params(const CouplingMatrix& j, const SolverOptions& options) {
  const auto roots = entangling_roots(j, options);
  const Times times = plan_times(j);
  const ComplexMatrix target = reference_qft(8);
  for (const auto& p : roots) {
    const auto program = emit_sequence(times, p, Form::Exact);
    if (1.0 - process_fidelity(target, logical_unitary(program, j)) <= options.fidelity_tolerance) return p;
  }

  // Landscape diagnostics: the best residual reachable from the start lattice.
  const double alpha = j(1, 2) / j(0, 2);
  double best = std::numeric_limits<double>::infinity();
  Vec3 where = Vec3::Zero();
  const int g = options.grid;
  for (int s = 0; s < g * g * g; ++s) {
    const Vec3 y(4.0 * kPi * (s / (g * g) + 1) / g, kTwoPi * ((s / g) % g + 0.5) / g, kTwoPi * (s % g + 0.5) / g);
    const double r = residuals_x(y(0), y(1), y(2), alpha).norm();
    if (r < best) {
      best = r;
      where = y;
    }
  }
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "no root of the entangling-parameter equations in the search box: %zu candidate roots, none "
                "passes the 1 - %.1e fidelity check; lattice minimum residual %.3e at J23*T3 = %.4f, A1 = %.4f, "
                "A2 = %.4f (alpha = %.6f)",
                roots.size(), options.fidelity_tolerance, best, where(0), where(1), where(2), alpha);
  throw ConvergenceError(buf);
}

double calibrate_j23(double j12, double j13, double target_t3, double guess) {
  const auto roots = entangling_roots(CouplingMatrix::three_spin(j12, j13, guess));
  if (roots.empty()) throw ConvergenceError("no entangling root at the initial J23 guess");
  Vec3 y(roots.front().t3 * guess, roots.front().a1, roots.front().a2);
  auto t3_at = [&](double j23) {
    const Start s = newton(y, j23 / j13, 200);
    if (s.norm > 1e-10) throw ConvergenceError("lost the entangling root while calibrating J23");
    y = s.y;
    return s.y(0) / j23;
  };
  double x0 = guess, f0 = t3_at(x0) - target_t3;
  double x1 = guess * (1.0 + 1e-3), f1 = t3_at(x1) - target_t3;
  for (int it = 0; it < 60 && std::abs(f1) > 1e-15; ++it) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = t3_at(x1) - target_t3;
  }
  if (std::abs(f1) > 1e-12) throw ConvergenceError("J23 calibration did not converge");
  return x1;
}

const CouplingMatrix& calibrated_couplings() {
  static const CouplingMatrix j = [] {
    const double j12 = kTwoPi * 31.98, j13 = kTwoPi * 18.01;
    const double j23 = calibrate_j23(j12, j13, 4.87e-3, kTwoPi * 33.0);
    return CouplingMatrix::three_spin(j12, j13, j23, "calibrated: T1, T2 inverted, J23 fitted to T3");
  }();
  return j;
}

EmitOptions standard_decoupling() {
  EmitOptions o;
  o.t1_dd = DdSpec{20, DdScheme::Kdd};
  o.t3_half_dd = DdSpec{20, DdScheme::Kdd};
  return o;
}

PulseProgram emit_sequence(const Times& times, const EntanglingParams& params, Form form, const EmitOptions& options) {
  PulseProgram p(3);
  p.relabel = {2, 1, 0};
  // Hadamard on qubit 1: H = i R(pi/2, -pi/2) R(pi).
  p.add(Rotate{0, kPi, 0.0}).add(Rotate{0, kPi / 2, -kPi / 2});
  p.add(Rotate{2, kPi, 0.0}).add(Rotate{1, kPi, 0.0}).add(Rotate{0, kPi, 0.0});
  p.add(FreeEvolve{times.t1, options.t1_dd});
  p.add(Rotate{2, kPi, 0.0});
  if (form == Form::Exact) p.add(FreeEvolve{times.t2, {}});
  p.add(Rotate{2, kPi, -3 * kPi / 16}).add(Rotate{1, params.a1, 3 * kPi / 4}).add(Rotate{0, kPi, 3 * kPi / 16});
  p.append(selective_recoupling_wrap(params.t3, 0, options.t3_half_dd));
  p.add(Rotate{2, kPi / 2, -kPi / 2}).add(Rotate{1, params.a2, 3 * kPi / 4});
  p.add(Measure{});
  if (form == Form::Optimized) return optimize::optimize(p);
  return p;
}

ComplexMatrix logical_unitary(const PulseProgram& program, const CouplingMatrix& j) {
  return metrics::relabel_matrix(program.qubit_count, program.relabel) * program_unitary(program, j);
}

std::vector<std::string> table_inputs() {
  return {"000", "001", "010", "011", "100", "101", "110", "111",
          "+00", "+01", "+10", "+11", "++0", "++1", "+++"};
}

VerificationReport verify_plan(const PulseProgram& program, const CouplingMatrix& j, double threshold) {
  VerificationReport rep;
  rep.threshold = threshold;
  const ComplexMatrix f = reference_qft(8);
  const ComplexMatrix u = logical_unitary(program, j);
  rep.process_infidelity = std::max(0.0, 1.0 - process_fidelity(f, u));
  rep.min_fidelity = 1.0;
  for (const auto& label : table_inputs()) {
    std::vector<Vector2c> factors;
    for (char c : label) factors.push_back(label_vector(c));
    const ComplexVector psi = product_vector(factors);
    const ComplexVector ideal = f * psi;
    const ComplexVector out = u * psi;
    const double fid = std::norm(ideal.dot(out));
    (label.find('+') == std::string::npos ? rep.basis : rep.superposition).push_back({label, fid});
    rep.min_fidelity = std::min(rep.min_fidelity, fid);
  }
  rep.passed = rep.process_infidelity <= threshold && rep.min_fidelity >= 1.0 - threshold;
  return rep;
}

SerialBaseline serial_baseline(const CouplingMatrix& j) {
  if (j.size() != 3) throw InvalidArgument("the serial baseline needs a three-spin coupling matrix");
  const double theta[3] = {kPi / 2, kPi / 4, kPi / 2};
  const double jp[3] = {j(0, 1), j(0, 2), j(1, 2)};
  SerialBaseline b;
  for (int k = 0; k < 3; ++k) {
    if (jp[k] == 0.0) throw InvalidArgument("serial baseline needs every pair coupled");
    b.pair_times[k] = theta[k] / std::abs(jp[k]);
    b.duration += b.pair_times[k];
  }
  b.minimal = b.duration / 2;
  return b;
}

QftPlan compile_qft(const CouplingMatrix& j, const EmitOptions& options, const SolverOptions& solver) {
  QftPlan plan;
  plan.j = j;
  plan.times = plan_times(j);
  plan.params = solve_entangling_params(j, solver);
  plan.exact = emit_sequence(plan.times, plan.params, Form::Exact, options);
  plan.optimized = emit_sequence(plan.times, plan.params, Form::Optimized, options);
  plan.exact_duration = plan.exact.evolution_time();
  plan.optimized_duration = plan.optimized.evolution_time();
  const ComplexMatrix f = reference_qft(8);
  plan.exact_infidelity = std::max(0.0, 1.0 - process_fidelity(f, logical_unitary(plan.exact, j)));
  plan.optimized_infidelity = std::max(0.0, 1.0 - process_fidelity(f, logical_unitary(plan.optimized, j)));
  return plan;
}

std::string format_plan(const QftPlan& plan) {
  std::ostringstream o;
  char buf[160];
  auto line = [&](const char* fmt, auto... v) {
    std::snprintf(buf, sizeof buf, fmt, v...);
    o << buf << '\n';
  };
  line("J12 = 2pi x %.6f Hz", plan.j(0, 1) / kTwoPi);
  line("J13 = 2pi x %.6f Hz", plan.j(0, 2) / kTwoPi);
  line("J23 = 2pi x %.6f Hz", plan.j(1, 2) / kTwoPi);
  line("alpha = %.9f", plan.params.alpha);
  line("T1 = %.6f ms", plan.times.t1 * 1e3);
  line("T2 = %.6f ms", plan.times.t2 * 1e3);
  line("T3 = %.6f ms", plan.params.t3 * 1e3);
  line("A1 = %.6f pi", plan.params.a1 / kPi);
  line("A2 = %.6f pi", plan.params.a2 / kPi);
  line("branch m = %d", plan.times.branch);
  line("residual norm = %.3e", plan.params.residual_norm);
  line("exact duration = %.6f ms, pulses = %d, process infidelity = %.3e", plan.exact_duration * 1e3,
       plan.exact.pulse_count(), plan.exact_infidelity);
  line("optimized duration = %.6f ms, pulses = %d, process infidelity = %.3e", plan.optimized_duration * 1e3,
       plan.optimized.pulse_count(), plan.optimized_infidelity);
  const auto serial = serial_baseline(plan.j);
  line("serial baseline = %.6f ms (half-angle convention %.6f ms)", serial.duration * 1e3, serial.minimal * 1e3);
  return o.str();
}

}  // namespace magic::qft
