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

#include "magic/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "magic/config.hpp"
#include "magic/engine.hpp"
#include "magic/error.hpp"
#include "magic/gates.hpp"
#include "magic/kernels.hpp"
#include "magic/metrics.hpp"
#include "magic/qft.hpp"
#include "magic/rng.hpp"

namespace magic::scenario {

using records::Cell;
using records::RunRecord;
using records::Table;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Conditional: return "conditional";
    case Kind::Topology: return "topology";
    case Kind::Fringes: return "fringes";
    case Kind::Period: return "period";
    case Kind::Fidelity: return "fidelity";
    case Kind::Program: return "program";
  }
  return "?";
}

Kind parse_kind(const std::string& token) {
  for (Kind k : {Kind::Conditional, Kind::Topology, Kind::Fringes, Kind::Period, Kind::Fidelity, Kind::Program})
    if (to_string(k) == token) return k;
  throw InvalidArgument("unknown scenario kind '" + token + "'");
}

void Scenario::validate() const {
  if (name.empty()) throw InvalidArgument("scenario needs a name");
  if (shots < 0) throw InvalidArgument("shot count must be non-negative");
  if (shots > 0 && !seed_set) throw InvalidArgument("scenario '" + name + "' samples shots and therefore needs a seed");
  if (kind == Kind::Program && !program) throw InvalidArgument("program scenario without a pulse program");
  if (phase_points < 4) throw InvalidArgument("phase_points must be at least 4");
  for (double t : times)
    if (t < 0) throw InvalidArgument("conditional times must be non-negative");
  noise_model.validate();
}

namespace {

// Defaults that differ by experiment type: white noise stands for the aggregate pulse error of
// the long QFT sequence (readout included), so Ramsey scans leave it off and QFT runs leave the
// separate readout channel off.
void kind_defaults(Scenario& s) {
  s.noise_model = NoiseModel::calibrated();
  if (s.kind == Kind::Conditional || s.kind == Kind::Topology) s.noise_model.white_noise_enabled = false;
  if (s.kind == Kind::Fringes || s.kind == Kind::Period || s.kind == Kind::Fidelity)
    s.noise_model.readout_enabled = false;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string bits_label(std::size_t index, int n) {
  std::string s;
  for (int q = 0; q < n; ++q) s += (index >> kernels::bit_of(q, n) & 1u) ? '1' : '0';
  return s;
}

double unwrap_near(double phase, double reference) {
  return phase + kTwoPi * std::round((reference - phase) / kTwoPi);
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return 0.0;
  return (n * sxy - sx * sy) / den;
}

// P(qubit q reads 1) after an analysis pulse R_q(pi/2, phi), for every phi.
std::vector<double> analysis_scan(const QuantumState& s, int q, const std::vector<double>& phases,
                                  const NoiseModel& noise) {
  std::vector<double> out;
  for (double phi : phases) {
    Matrix2c red = s.reduced(q);
    const Matrix2c r = gates::rotation(kPi / 2, phi);
    red = r * red * r.adjoint();
    double p = std::clamp(red(1, 1).real(), 0.0, 1.0);
    if (noise.readout_enabled) p = noise.readout_fidelity * p + (1.0 - noise.readout_fidelity) * (1.0 - p);
    out.push_back(p);
  }
  return out;
}

std::vector<double> sample_each(const std::vector<double>& p, long shots, CounterRng& rng) {
  std::vector<double> out;
  for (double x : p) out.push_back(static_cast<double>(rng.binomial(shots, x)) / static_cast<double>(shots));
  return out;
}

std::vector<Basis> bases_of(const Scenario& s, int n) {
  if (s.topology.qubits.empty()) return std::vector<Basis>(n, Basis::SigmaMinus);
  if (s.topology.size() != n) throw InvalidArgument("topology length does not match the register");
  return s.topology.bases();
}

void add_metadata(RunRecord& rec, const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise) {
  rec.metadata.push_back({"version", MAGIC_FORGE_VERSION});
  rec.metadata.push_back({"kind", to_string(s.kind)});
  rec.metadata.push_back({"couplings", j.provenance()});
  for (int a = 0; a < j.size(); ++a)
    for (int b = a + 1; b < j.size(); ++b)
      rec.metadata.push_back({"J" + std::to_string(a + 1) + std::to_string(b + 1) + "_hz", records::format_cell(j(a, b) / kTwoPi)});
  rec.metadata.push_back({"shots", std::to_string(s.shots)});
  rec.metadata.push_back({"noise", s.noise ? "on" : "off"});
  rec.metadata.push_back({"dephasing", noise.dephasing_enabled ? "on" : "off"});
  rec.metadata.push_back({"white_noise", noise.white_noise_enabled ? records::format_cell(noise.white_noise) : "off"});
  rec.metadata.push_back({"readout", noise.readout_enabled ? records::format_cell(noise.readout_fidelity) : "off"});
  rec.metadata.push_back({"decoupling", s.decoupling ? "on" : "off"});
}

// Noise-free reference state after the QFT on physical qubits (before the output relabel).
ComplexVector ideal_physical_output(const std::string& label, const PulseProgram& program) {
  std::vector<Vector2c> f;
  for (char c : label) f.push_back(label_vector(c));
  const ComplexMatrix p = metrics::relabel_matrix(program.qubit_count, program.relabel);
  return p.adjoint() * (qft::reference_qft(8) * product_vector(f));
}

QuantumState run_qft(const std::string& label, const PulseProgram& program, const CouplingMatrix& j,
                     const NoiseModel& noise) {
  auto in = QuantumState::from_label(label);
  return run_program(program, std::move(in), j, noise).state;
}

void run_conditional(const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise, CounterRng& rng,
                     RunRecord& rec) {
  const int n = j.size();
  std::vector<std::string> preps = s.inputs;
  if (preps.empty()) preps = {"+11", "+10", "+01", "+00"};
  std::vector<double> times = s.times;
  if (times.empty()) times = {1e-3, 2e-3, 3e-3, 4e-3};
  const auto phases = phase_grid(s.phase_points);
  const auto bases = bases_of(s, n);
  const auto jeff = encoding::encoded_couplings(j, bases);

  Table fringes("fringes", {"prep", "time_ms", "phase", "p_exact", "p_sampled"});
  Table fits("phases", {"prep", "time_ms", "phase_exact", "contrast_exact", "phase_sampled", "contrast_sampled"});
  Table slopes("slopes", {"prep", "slope_exact", "slope_sampled", "slope_expected", "rate_hz_exact"});
  for (const auto& prep : preps) {
    if (static_cast<int>(prep.size()) != n) throw InvalidArgument("preparation '" + prep + "' has the wrong length");
    const int q = static_cast<int>(prep.find('+'));
    double expected = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == q) continue;
      const double z = prep[k] == '1' ? -1.0 : 1.0;
      expected -= jeff(q, k) * z;
    }
    std::vector<double> t_used, ph_exact, ph_sampled;
    double ref_exact = kPi, ref_sampled = kPi;
    for (double t : times) {
      RamseySpec spec;
      spec.prep = prep;
      spec.conditional_time = t;
      spec.phases = phases;
      spec.bases = bases;
      if (s.decoupling && t > 0) spec.dd = DdSpec{20, DdScheme::Kdd};
      spec.shots = 0;
      const auto res = ramsey_scan(spec, j, noise);
      const auto fit = metrics::ramsey_fit(phases, res.probability);
      std::vector<double> sampled;
      metrics::RamseyFit fit_s = fit;
      if (s.shots > 0) {
        sampled = sample_each(res.probability, s.shots, rng);
        fit_s = metrics::ramsey_fit(phases, sampled, 1e-3);
      }
      for (std::size_t i = 0; i < phases.size(); ++i)
        fringes.add_row({prep, t * 1e3, phases[i], res.probability[i], s.shots > 0 ? Cell(sampled[i]) : Cell(std::string())});
      const double pe = unwrap_near(fit.phase, ref_exact + expected * (t_used.empty() ? t : t - t_used.back()));
      const double ps = unwrap_near(fit_s.phase, ref_sampled + expected * (t_used.empty() ? t : t - t_used.back()));
      ref_exact = pe;
      ref_sampled = ps;
      t_used.push_back(t);
      ph_exact.push_back(pe);
      ph_sampled.push_back(ps);
      fits.add_row({prep, t * 1e3, pe, fit.contrast, s.shots > 0 ? Cell(ps) : Cell(std::string()),
                    s.shots > 0 ? Cell(fit_s.contrast) : Cell(std::string())});
    }
    const double se = slope_of(t_used, ph_exact);
    slopes.add_row({prep, se, s.shots > 0 ? Cell(slope_of(t_used, ph_sampled)) : Cell(std::string()), expected,
                    se / kTwoPi});
  }
  rec.tables.push_back(std::move(fringes));
  rec.tables.push_back(std::move(fits));
  rec.tables.push_back(std::move(slopes));
}

// Fringe phase difference of `qubit` between both neighbors in |1> and both in |0>.
double conditional_phase(const PulseProgram& body, int qubit, const CouplingMatrix& j, const std::vector<Basis>& bases,
                         const std::vector<double>& phases) {
  const int n = j.size();
  double phi[2];
  for (int up = 0; up < 2; ++up) {
    std::size_t index = 0;
    for (int k = 0; k < n; ++k)
      if (k != qubit && up) index |= std::size_t{1} << kernels::bit_of(k, n);
    PulseProgram p(n);
    p.add(Rotate{qubit, kPi / 2, 0.0});
    p.append(body.instructions);
    const auto res = run_program(p, QuantumState::basis_state(n, index, bases), j, NoiseModel::noiseless());
    phi[up] = metrics::ramsey_fit(phases, analysis_scan(res.state, qubit, phases, NoiseModel::noiseless())).phase;
  }
  return std::remainder(phi[1] - phi[0], kTwoPi);
}

void run_topology(const Scenario& s, const CouplingMatrix& j, RunRecord& rec) {
  const int n = j.size();
  RealMatrix mag = j.matrix().cwiseAbs();
  const CouplingMatrix base(mag, j.provenance());
  Table couplings("couplings", {"label", "assignment", "J12_hz", "J13_hz", "J23_hz"});
  for (char label : std::string("ABCDE")) {
    const auto a = encoding::topology_preset(label, s.presets);
    const auto e = encoding::effective_couplings(base, a);
    couplings.add_row({std::string(1, label), a.to_string(), e(0, 1) / kTwoPi, e(0, 2) / kTwoPi, e(1, 2) / kTwoPi});
  }
  rec.tables.push_back(std::move(couplings));

  std::vector<double> times = s.times;
  if (times.empty()) times = {1e-3, 2e-3, 3e-3, 4e-3};
  const auto phases = phase_grid(s.phase_points);
  const int d = s.presets.decoupled;
  const std::vector<Basis> sigma(n, Basis::SigmaMinus);
  Table memory("decoupled_memory", {"qubit", "time_ms", "phase_coupled", "phase_memory", "echo_pulses", "transfers"});
  for (double t : times) {
    PulseProgram plain(n);
    plain.add(FreeEvolve{t, {}});
    PulseProgram mem(n);
    mem.append(encoding::memory_protocol(d, Basis::SigmaMinus, t, n));
    int echoes = 0, transfers = 0;
    for (const auto& op : mem.instructions) {
      echoes += std::holds_alternative<Echo>(op);
      transfers += std::holds_alternative<TransferBasis>(op);
    }
    memory.add_row({static_cast<long long>(d + 1), t * 1e3, conditional_phase(plain, d, base, sigma, phases),
                    conditional_phase(mem, d, base, sigma, phases), static_cast<long long>(echoes),
                    static_cast<long long>(transfers)});
  }
  rec.tables.push_back(std::move(memory));
}

qft::QftPlan plan_for(const Scenario& s, const CouplingMatrix& j) {
  return qft::compile_qft(j, s.decoupling ? qft::standard_decoupling() : qft::EmitOptions{});
}

void plan_metadata(RunRecord& rec, const qft::QftPlan& plan) {
  rec.metadata.push_back({"T1_ms", records::format_cell(plan.times.t1 * 1e3)});
  rec.metadata.push_back({"T2_ms", records::format_cell(plan.times.t2 * 1e3)});
  rec.metadata.push_back({"T3_ms", records::format_cell(plan.params.t3 * 1e3)});
  rec.metadata.push_back({"A1_pi", records::format_cell(plan.params.a1 / kPi)});
  rec.metadata.push_back({"A2_pi", records::format_cell(plan.params.a2 / kPi)});
  rec.metadata.push_back({"sequence", "optimized"});
}

void run_fringes(const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise, CounterRng& rng, RunRecord& rec) {
  const auto plan = plan_for(s, j);
  plan_metadata(rec, plan);
  const std::string label = s.inputs.empty() ? "010" : s.inputs.front();
  const auto phases = phase_grid(s.phase_points);
  const QuantumState noisy = run_qft(label, plan.optimized, j, noise);
  const QuantumState ideal = QuantumState::pure(ideal_physical_output(label, plan.optimized));
  const auto clean = NoiseModel::noiseless();
  Table fringes("fringes", {"input", "qubit", "phase", "p_ideal", "p_simulated", "p_simulated_noisy"});
  Table fits("fringe_fits", {"input", "qubit", "phase_ideal", "phase_simulated", "phase_sampled", "delta_phase",
                             "contrast_simulated"});
  for (int q = 0; q < 3; ++q) {
    const auto pi = analysis_scan(ideal, q, phases, clean);
    const auto ps = analysis_scan(noisy, q, phases, noise);
    std::vector<double> pn = ps;
    if (s.shots > 0) pn = sample_each(ps, s.shots, rng);
    for (std::size_t i = 0; i < phases.size(); ++i)
      fringes.add_row({label, static_cast<long long>(q + 1), phases[i], pi[i], ps[i], pn[i]});
    const auto fi = metrics::ramsey_fit(phases, pi);
    const auto fs = metrics::ramsey_fit(phases, ps);
    const auto fn = metrics::ramsey_fit(phases, pn, 1e-3);
    fits.add_row({label, static_cast<long long>(q + 1), fi.phase, fs.phase, fn.phase,
                  std::remainder(fn.phase - fi.phase, kTwoPi), fs.contrast});
  }
  rec.tables.push_back(std::move(fringes));
  rec.tables.push_back(std::move(fits));
}

void run_period(const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise, CounterRng& rng, RunRecord& rec) {
  const auto plan = plan_for(s, j);
  plan_metadata(rec, plan);
  std::vector<std::string> inputs = s.inputs;
  if (inputs.empty()) inputs = {"111", "+11", "++1", "+++"};
  Table hist("histograms", {"input", "state_label", "p_simulated_noisy", "p_ideal", "p_simulated"});
  Table overlap("overlap", {"input", "sso_sampled", "distinguishability_sampled", "sso_simulated",
                            "distinguishability_simulated"});
  for (const auto& label : inputs) {
    QuantumState st = run_qft(label, plan.optimized, j, noise);
    auto sim = metrics::outcome_distribution(st, plan.optimized.relabel, label);
    if (noise.readout_enabled) sim = metrics::apply_readout_confusion(sim, 3, noise.readout_fidelity);
    std::vector<Vector2c> f;
    for (char c : label) f.push_back(label_vector(c));
    const ComplexVector ideal_vec = qft::reference_qft(8) * product_vector(f);
    metrics::OutcomeDistribution ideal;
    for (Eigen::Index a = 0; a < ideal_vec.size(); ++a) ideal.p.push_back(std::norm(ideal_vec(a)));
    const auto sampled = s.shots > 0 ? metrics::sample(sim, s.shots, rng) : sim;
    for (std::size_t a = 0; a < ideal.p.size(); ++a)
      hist.add_row({label, bits_label(a, 3), sampled.p[a], ideal.p[a], sim.p[a]});
    overlap.add_row({label, metrics::sso(sampled, ideal), metrics::distinguishability(sampled, ideal),
                     metrics::sso(sim, ideal), metrics::distinguishability(sim, ideal)});
  }
  rec.tables.push_back(std::move(hist));
  rec.tables.push_back(std::move(overlap));
}

struct ReferenceRow {
  const char* label;
  double f1, f2, f3, f;  // f < 0: not available
};

// Experimental single-qubit and three-qubit fidelities for the fifteen inputs.
constexpr ReferenceRow kReference[] = {
    {"000", 0.74, 0.88, 0.82, 0.59}, {"001", 0.77, 0.81, 0.86, 0.54}, {"010", 0.76, 0.86, 0.84, 0.55},
    {"011", 0.77, 0.84, 0.83, 0.54}, {"100", 0.74, 0.89, 0.88, 0.59}, {"101", 0.73, 0.85, 0.90, 0.66},
    {"110", 0.70, 0.78, 0.90, 0.57}, {"111", 0.68, 0.79, 0.89, 0.63}, {"+00", 0.84, 0.78, 0.86, 0.65},
    {"+01", 0.83, 0.84, 0.81, -1},   {"+10", 0.81, 0.77, 0.76, -1},   {"+11", 0.82, 0.81, 0.80, -1},
    {"++0", 0.79, 0.74, 0.88, -1},   {"++1", 0.84, 0.73, 0.75, -1},   {"+++", 0.86, 0.79, 0.77, 0.54},
};

Cell reference_cell(const std::string& label, int column) {
  for (const auto& r : kReference) {
    if (label != r.label) continue;
    const double v = column == 0 ? r.f1 : column == 1 ? r.f2 : column == 2 ? r.f3 : r.f;
    return v < 0 ? Cell(std::string()) : Cell(v);
  }
  return Cell(std::string());
}

// Standard error of the fitted fidelity from binomial point variances, propagated linearly
// through the least-squares coefficients.
double fitted_fidelity_error(const std::vector<double>& phases, const std::vector<double>& p, long shots,
                             double expected_minimum) {
  const Eigen::Index m = static_cast<Eigen::Index>(phases.size());
  RealMatrix a(m, 3);
  for (Eigen::Index i = 0; i < m; ++i) a.row(i) << 1.0, std::cos(phases[i]), std::sin(phases[i]);
  const RealMatrix pinv = (a.transpose() * a).inverse() * a.transpose();
  const Eigen::RowVector3d g(0.0, -std::cos(expected_minimum), -std::sin(expected_minimum));
  const RealVector w = g * pinv;
  double var = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) var += w(i) * w(i) * p[i] * (1 - p[i]) / static_cast<double>(shots);
  return std::sqrt(var);
}

void run_fidelity(const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise, CounterRng& rng, RunRecord& rec) {
  const auto plan = plan_for(s, j);
  plan_metadata(rec, plan);
  std::vector<std::string> inputs = s.inputs;
  if (inputs.empty()) inputs = qft::table_inputs();
  const auto phases = phase_grid(s.phase_points);
  Table t("fidelities", {"input", "f1", "f2", "f3", "product", "f", "f_direct", "f1_error", "f2_error", "f3_error",
                         "method", "reference_f1", "reference_f2", "reference_f3", "reference_f", "has_reference_f"});
  double sum_f = 0.0, sum_basis = 0.0;
  int basis_count = 0;
  for (const auto& label : inputs) {
    const QuantumState st = run_qft(label, plan.optimized, j, noise);
    const ComplexVector target = ideal_physical_output(label, plan.optimized);
    const auto factors = metrics::product_factors(target, 3);
    const double f = metrics::fidelity_via_local_rotation(st, factors);
    const double fd = metrics::state_fidelity(st, target);
    double fk[3], ek[3];
    for (int q = 0; q < 3; ++q) {
      const Vector2c v = factors[q];
      if (std::abs(std::abs(v(0)) - std::abs(v(1))) < 1e-9) {
        const double beta = metrics::equatorial_phase(v);
        auto p = analysis_scan(st, q, phases, noise);
        if (s.shots > 0) p = sample_each(p, s.shots, rng);
        const auto fit = metrics::ramsey_fit(phases, p, s.shots > 0 ? 1e-3 : 1e-6);
        fk[q] = metrics::single_qubit_fidelity(fit, beta);
        ek[q] = s.shots > 0 ? fitted_fidelity_error(phases, p, s.shots, beta - kPi / 2) : 0.0;
      } else {
        // Energy eigenstate: the excitation probability itself.
        const bool one = std::abs(v(1)) > std::abs(v(0));
        double p = st.reduced(q)(one ? 1 : 0, one ? 1 : 0).real();
        if (noise.readout_enabled) p = noise.readout_fidelity * p + (1.0 - noise.readout_fidelity) * (1.0 - p);
        if (s.shots > 0) p = static_cast<double>(rng.binomial(s.shots, p)) / static_cast<double>(s.shots);
        fk[q] = std::clamp(p, 0.0, 1.0);
        ek[q] = s.shots > 0 ? std::sqrt(fk[q] * (1 - fk[q]) / static_cast<double>(s.shots)) : 0.0;
      }
    }
    const Cell ref_f = reference_cell(label, 3);
    t.add_row({label, fk[0], fk[1], fk[2], fk[0] * fk[1] * fk[2], f, fd, ek[0], ek[1], ek[2],
               metrics::to_string(metrics::FidelityReport::Method::RotationProtocol), reference_cell(label, 0),
               reference_cell(label, 1), reference_cell(label, 2), ref_f, !std::holds_alternative<std::string>(ref_f)});
    sum_f += f;
    if (label.find('+') == std::string::npos) {
      sum_basis += f;
      ++basis_count;
    }
  }
  rec.tables.push_back(std::move(t));
  Table summary("summary", {"quantity", "value"});
  summary.add_row({std::string("mean_f_all"), sum_f / static_cast<double>(inputs.size())});
  if (basis_count) summary.add_row({std::string("mean_f_basis"), sum_basis / basis_count});
  const auto budget = metrics::error_budget(std::clamp(sum_basis / std::max(basis_count, 1), 0.0, 1.0),
                                            noise.white_noise_enabled ? noise.white_noise : 0.0, noise.readout_fidelity);
  summary.add_row({std::string("white_noise_ceiling"), budget.white_noise_ceiling});
  summary.add_row({std::string("detection_infidelity"), budget.detection_infidelity});
  summary.add_row({std::string("residual_dd_infidelity"), budget.residual_dd_infidelity});
  rec.tables.push_back(std::move(summary));
}

void run_user_program(const Scenario& s, const CouplingMatrix& j, const NoiseModel& noise, CounterRng& rng,
                      RunRecord& rec) {
  const PulseProgram& p = *s.program;
  const int n = p.qubit_count;
  const auto bases = bases_of(s, n);
  QuantumState in = s.inputs.empty() ? QuantumState::basis_state(n, 0, bases) : QuantumState::from_label(s.inputs.front(), bases);
  const auto res = run_program(p, std::move(in), j, noise);
  for (const auto& e : res.events) rec.events.push_back(format_event(e));
  auto d = metrics::outcome_distribution(res.state, p.relabel);
  if (noise.readout_enabled) d = metrics::apply_readout_confusion(d, n, noise.readout_fidelity);
  const auto sampled = s.shots > 0 ? metrics::sample(d, s.shots, rng) : d;
  Table pops("populations", {"state_label", "probability", "p_sampled"});
  for (std::size_t a = 0; a < d.p.size(); ++a) pops.add_row({bits_label(a, n), d.p[a], sampled.p[a]});
  rec.tables.push_back(std::move(pops));
  Table info("state", {"quantity", "value"});
  info.add_row({std::string("trace"), res.state.trace().real()});
  info.add_row({std::string("purity"), res.state.purity()});
  info.add_row({std::string("elapsed_s"), res.elapsed});
  info.add_row({std::string("measured"), res.measured});
  rec.tables.push_back(std::move(info));
}

}  // namespace

std::vector<std::string> builtin_names() { return {"fig1", "fig2", "fig4", "fig5", "table1"}; }

Scenario builtin(const std::string& name) {
  Scenario s;
  s.name = name;
  s.seed = 20130212;
  s.seed_set = true;
  if (name == "fig1") {
    s.kind = Kind::Conditional;
    s.shots = 50;
    s.times = {1e-3, 2e-3, 3e-3, 4e-3};
    s.phase_points = 25;
  } else if (name == "fig2") {
    s.kind = Kind::Topology;
    s.trap = chain::TrapConfig{};
  } else if (name == "fig4") {
    s.kind = Kind::Fringes;
    s.shots = 50;
    s.inputs = {"010"};
    s.phase_points = 25;
  } else if (name == "fig5") {
    s.kind = Kind::Period;
    s.shots = 1250;
    s.inputs = {"111", "+11", "++1", "+++"};
  } else if (name == "table1") {
    s.kind = Kind::Fidelity;
    s.inputs = qft::table_inputs();
  } else {
    throw InvalidArgument("unknown built-in scenario '" + name + "'");
  }
  const auto kind = s.kind;
  kind_defaults(s);
  s.kind = kind;
  return s;
}

Scenario parse(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
  const auto cfg = KeyValueConfig::parse(in, source);
  const std::string sec = "scenario";
  if (!cfg.has_section(sec)) throw ParseError(source, 1, "missing [scenario] section");
  Scenario s;
  s.name = cfg.get_string(sec, "name", "");
  if (s.name.empty()) throw ParseError(source, 1, "[scenario] needs a name");
  try {
    s.kind = parse_kind(cfg.get_string(sec, "kind", "program"));
  } catch (const InvalidArgument& e) {
    throw ParseError(source, cfg.line_of(sec, "kind"), e.what());
  }
  kind_defaults(s);
  s.shots = cfg.get_int(sec, "shots", 0);
  if (cfg.has(sec, "seed")) {
    s.seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", 0));
    s.seed_set = true;
  }
  s.noise = cfg.get_bool(sec, "noise", true);
  s.decoupling = cfg.get_bool(sec, "decoupling", true);
  s.phase_points = static_cast<int>(cfg.get_int(sec, "phase_points", s.phase_points));
  s.times = cfg.get_list(sec, "times", {});
  s.inputs = split_list(cfg.get_string(sec, "inputs", ""));
  auto at = [&](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, cfg.line_of(sec, key), e.what());
    }
  };
  if (cfg.has(sec, "topology"))
    at("topology", [&] { s.topology = encoding::TopologyAssignment::parse(cfg.get_string(sec, "topology", ""), "scenario"); });
  s.presets.opposite_sign_flip = static_cast<int>(cfg.get_int(sec, "flip_opposite", 1)) - 1;
  s.presets.same_sign_flip = static_cast<int>(cfg.get_int(sec, "flip_same", 2)) - 1;
  s.presets.decoupled = static_cast<int>(cfg.get_int(sec, "decouple", 1)) - 1;
  auto resolve = [&](const std::string& rel) {
    std::filesystem::path p(rel);
    return p.is_absolute() ? p : base_dir / p;
  };
  if (cfg.has(sec, "coupling"))
    at("coupling", [&] { s.couplings = load_coupling_matrix(resolve(cfg.get_string(sec, "coupling", ""))); });
  if (cfg.has(sec, "program"))
    at("program", [&] { s.program = load_program(resolve(cfg.get_string(sec, "program", "")).string()); });
  if (cfg.has_section("trap")) s.trap = chain::TrapConfig::from_config(cfg);
  if (cfg.has_section("noise")) s.noise_model = NoiseModel::from_config(cfg, s.noise_model);
  at("name", [&] { s.validate(); });
  return s;
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path.string());
  return parse(in, path.string(), path.parent_path());
}

CouplingMatrix resolve_couplings(const Scenario& s) {
  if (s.couplings) return *s.couplings;
  if (s.trap) return chain::trap_couplings(*s.trap);
  return qft::calibrated_couplings();
}

records::RunRecord run(const Scenario& s) {
  s.validate();
  const CouplingMatrix j = resolve_couplings(s);
  const NoiseModel noise = s.noise ? s.noise_model : NoiseModel::noiseless();
  CounterRng rng(s.seed);
  RunRecord rec;
  rec.scenario = s.name;
  rec.seed = s.seed;
  add_metadata(rec, s, j, noise);
  switch (s.kind) {
    case Kind::Conditional: run_conditional(s, j, noise, rng, rec); break;
    case Kind::Topology: run_topology(s, j, rec); break;
    case Kind::Fringes: run_fringes(s, j, noise, rng, rec); break;
    case Kind::Period: run_period(s, j, noise, rng, rec); break;
    case Kind::Fidelity: run_fidelity(s, j, noise, rng, rec); break;
    case Kind::Program: run_user_program(s, j, noise, rng, rec); break;
  }
  return rec;
}

}  // namespace magic::scenario
