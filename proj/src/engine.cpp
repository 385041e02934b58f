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

#include "magic/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "magic/encoding.hpp"
#include "magic/error.hpp"
#include "magic/gates.hpp"
#include "magic/kernels.hpp"
#include "magic/metrics.hpp"

namespace magic {

std::string format_event(const Event& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "t=%.9f dt=%.9f op=%d ", e.start, e.duration, e.instruction);
  return buf + e.kind + (e.detail.empty() ? "" : " " + e.detail);
}

void apply_rotation(QuantumState& state, int qubit, double theta, double phi) {
  if (qubit < 0 || qubit >= state.qubit_count()) throw InvalidArgument("rotation qubit out of range");
  kernels::conjugate_one_qubit(state.rho(), state.qubit_count(), qubit, gates::rotation(theta, phi));
}

void apply_phase(QuantumState& state, int qubit, double phi) {
  if (qubit < 0 || qubit >= state.qubit_count()) throw InvalidArgument("phase qubit out of range");
  kernels::conjugate_one_qubit(state.rho(), state.qubit_count(), qubit, gates::phase(phi));
}

namespace {

std::vector<double> rates_for(const std::vector<Basis>& bases, const NoiseModel& noise) {
  if (!noise.dephasing_enabled) return {};
  std::vector<double> r;
  for (Basis b : bases) r.push_back(noise.dephasing_rate(b));
  return r;
}

void track_exposure(QuantumState& state, double duration) {
  for (int q = 0; q < state.qubit_count(); ++q)
    if (std::abs(state.reduced(q)(0, 1)) > 1e-12) state.add_exposure(q, duration);
}

void check_symmetric(const RealMatrix& j, int n) {
  if (j.rows() != n || j.cols() != n)
    throw InvalidArgument("coupling matrix size does not match the register");
  const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
  if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw InvalidArgument("coupling matrix is not symmetric");
}

// Density-matrix back end with noise channels.
struct DensityBackend {
  QuantumState& state;
  const NoiseModel& noise;

  void pulse(int q, const Matrix2c& u) { kernels::conjugate_one_qubit(state.rho(), state.qubit_count(), q, u); }
  void window(const RealVector& energies, double t) {
    track_exposure(state, t);
    const auto rates = rates_for(state.bases(), noise);
    kernels::ising_window(state.rho(), energies, t, rates);
  }
  void idle(double t) {
    const auto rates = rates_for(state.bases(), noise);
    kernels::dephase(state.rho(), t, rates);
  }
  bool white_noise() {
    if (!noise.white_noise_enabled || noise.white_noise == 0.0) return false;
    kernels::mix_white_noise(state.rho(), noise.white_noise);
    return true;
  }
};

// Unitary back end: accumulates U by left multiplication.
struct UnitaryBackend {
  ComplexMatrix& u;
  int n;

  void pulse(int q, const Matrix2c& g) { kernels::left_multiply_one_qubit(u, n, q, g); }
  void window(const RealVector& energies, double t) { kernels::left_multiply_ising(u, energies, t); }
  void idle(double) {}
  bool white_noise() { return false; }
};

template <class Backend>
class Executor {
 public:
  Executor(Backend& backend, std::vector<Basis>& bases, const CouplingMatrix& j_sigma_minus,
           const EngineOptions& options, std::vector<Event>* events)
      : b_(backend), bases_(bases), j_(j_sigma_minus), opt_(options), events_(events) {}

  double elapsed() const { return t_; }
  bool measured() const { return measured_; }

  void run(const PulseProgram& program) {
    for (std::size_t i = 0; i < program.instructions.size(); ++i) step(static_cast<int>(i), program.instructions[i]);
    if (!noise_done_) finish_noise(-1);
  }

 private:
  void log(int idx, std::string kind, std::string detail, double dt) {
    if (events_ && opt_.record_events) events_->push_back({idx, std::move(kind), std::move(detail), t_, dt});
  }

  double pulse_time(double theta) const { return opt_.finite_pulses ? std::abs(theta) / opt_.rabi_frequency : 0.0; }

  void rotate(int idx, const char* kind, int q, double theta, double phi) {
    const double dt = pulse_time(theta);
    b_.pulse(q, gates::rotation(theta, phi));
    if (dt > 0) b_.idle(dt);
    char buf[96];
    std::snprintf(buf, sizeof buf, "q=%d theta=%.12g phi=%.12g", q + 1, theta, phi);
    log(idx, kind, buf, dt);
    t_ += dt;
  }

  const RealVector& energies() {
    auto it = cache_.find(bases_);
    if (it != cache_.end()) return it->second;
    const auto j = encoding::encoded_couplings(j_, bases_);
    return cache_.emplace(bases_, kernels::ising_energies(j.matrix())).first->second;
  }

  void evolve(int idx, const FreeEvolve& ev) {
    if (ev.duration == 0.0) return;
    if (ev.dd.active()) {
      std::vector<bool> skip(bases_.size());
      for (std::size_t q = 0; q < bases_.size(); ++q) skip[q] = bases_[q] == Basis::Pi;
      const auto frag = dd_fragment(ev.dd.pulses, ev.duration, ev.dd.scheme, static_cast<int>(bases_.size()),
                                    skip, opt_.kdd_phase_advance);
      log(idx, "EV", "T=" + std::to_string(ev.duration) + " dd=" + std::to_string(ev.dd.pulses) + "," +
                         to_string(ev.dd.scheme), ev.duration);
      for (const auto& op : frag) {
        if (const auto* r = std::get_if<Rotate>(&op)) {
          rotate(idx, "DD", r->qubit, r->theta, r->phi);
        } else if (const auto* w = std::get_if<FreeEvolve>(&op)) {
          b_.window(energies(), w->duration);
          t_ += w->duration;
        }
      }
      return;
    }
    b_.window(energies(), ev.duration);
    char buf[64];
    std::snprintf(buf, sizeof buf, "T=%.12g", ev.duration);
    log(idx, "EV", buf, ev.duration);
    t_ += ev.duration;
  }

  void transfer(int idx, const TransferBasis& x) {
    const int n = static_cast<int>(bases_.size());
    std::vector<int> targets;
    if (x.qubit == TransferBasis::kAllQubits) {
      for (int q = 0; q < n; ++q) targets.push_back(q);
    } else {
      targets.push_back(x.qubit);
    }
    std::size_t pulses = x.pulses.size();
    for (int q : targets) {
      const Basis from = bases_[q];
      if (from == x.target) throw InvalidArgument("qubit " + std::to_string(q + 1) + " is already in the " + to_string(from) + " basis");
      if (from != Basis::Pi && x.target != Basis::Pi)
        throw InvalidArgument("direct sigma- <-> sigma+ transfer is not supported; route it through the pi basis");
    }
    if (pulses == 0) pulses = 2 + targets.size();
    const double dt = opt_.finite_pulses ? static_cast<double>(pulses) * kPi / opt_.rabi_frequency : 0.0;
    if (dt > 0) b_.idle(dt);
    for (int q : targets) bases_[q] = x.target;
    log(idx, "XFER", (x.qubit == TransferBasis::kAllQubits ? std::string("q=all") : "q=" + std::to_string(x.qubit + 1)) +
                         " to=" + to_string(x.target) + " pulses=" + std::to_string(pulses), dt);
    t_ += dt;
  }

  void finish_noise(int idx) {
    noise_done_ = true;
    if (b_.white_noise()) log(idx, "NOISE", "white", 0.0);
  }

  void step(int idx, const PulseInstruction& op) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Rotate>) {
            rotate(idx, "R", x.qubit, x.theta, x.phi);
          } else if constexpr (std::is_same_v<T, PhaseShift>) {
            b_.pulse(x.qubit, gates::phase(x.phi));
            char buf[64];
            std::snprintf(buf, sizeof buf, "q=%d phi=%.12g", x.qubit + 1, x.phi);
            log(idx, "PH", buf, 0.0);
          } else if constexpr (std::is_same_v<T, FreeEvolve>) {
            evolve(idx, x);
          } else if constexpr (std::is_same_v<T, TransferBasis>) {
            transfer(idx, x);
          } else if constexpr (std::is_same_v<T, Echo>) {
            rotate(idx, "ECHO", x.qubit, kPi, x.phi);
          } else if constexpr (std::is_same_v<T, Measure>) {
            finish_noise(idx);
            measured_ = true;
            log(idx, "MEAS", "", 0.0);
          }
        },
        op);
  }

  Backend& b_;
  std::vector<Basis>& bases_;
  const CouplingMatrix& j_;
  const EngineOptions& opt_;
  std::vector<Event>* events_;
  std::map<std::vector<Basis>, RealVector> cache_;
  double t_ = 0.0;
  bool measured_ = false;
  bool noise_done_ = false;
};

}  // namespace

void free_evolution(QuantumState& state, const RealMatrix& j_eff, double duration, const NoiseModel& noise) {
  if (duration < 0) throw InvalidArgument("free-evolution duration must be non-negative");
  check_symmetric(j_eff, state.qubit_count());
  if (duration == 0.0) return;
  DensityBackend b{state, noise};
  b.window(kernels::ising_energies(0.5 * (j_eff + j_eff.transpose())), duration);
}

void free_evolution(QuantumState& state, const CouplingMatrix& j_eff, double duration, const NoiseModel& noise) {
  free_evolution(state, j_eff.matrix(), duration, noise);
}

RunResult run_program(const PulseProgram& program, QuantumState initial, const CouplingMatrix& j_sigma_minus,
                      const NoiseModel& noise, const EngineOptions& options) {
  program.validate();
  noise.validate();
  if (program.qubit_count != initial.qubit_count())
    throw InvalidArgument("program declares " + std::to_string(program.qubit_count) + " qubits but the state has " +
                          std::to_string(initial.qubit_count()));
  check_symmetric(j_sigma_minus.matrix(), initial.qubit_count());
  RunResult result{std::move(initial), {}, false, 0.0};
  std::vector<Basis> bases = result.state.bases();
  DensityBackend backend{result.state, noise};
  Executor<DensityBackend> ex(backend, bases, j_sigma_minus, options, &result.events);
  ex.run(program);
  for (int q = 0; q < result.state.qubit_count(); ++q) result.state.set_basis(q, bases[q]);
  result.measured = ex.measured();
  result.elapsed = ex.elapsed();
  return result;
}

ComplexMatrix program_unitary(const PulseProgram& program, const CouplingMatrix& j_sigma_minus,
                              std::vector<Basis> bases, const EngineOptions& options) {
  program.validate();
  const int n = program.qubit_count;
  if (bases.empty()) bases.assign(n, Basis::SigmaMinus);
  check_symmetric(j_sigma_minus.matrix(), n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  UnitaryBackend backend{u, n};
  EngineOptions opt = options;
  opt.record_events = false;
  Executor<UnitaryBackend> ex(backend, bases, j_sigma_minus, opt, nullptr);
  ex.run(program);
  return u;
}

std::vector<double> dd_phases(int pulses, DdScheme scheme, bool kdd_phase_advance) {
  std::vector<double> out;
  if (scheme == DdScheme::Cpmg) {
    out.assign(pulses, kPi / 2);
  } else if (scheme == DdScheme::Kdd) {
    static constexpr double kBlock[5] = {kPi / 6, 0.0, kPi / 2, 0.0, kPi / 6};
    static constexpr double kAdvance[4] = {0.0, kPi / 2, 0.0, kPi / 2};
    for (int i = 0; i < pulses; ++i) {
      const int block = i / 5;
      out.push_back(kBlock[i % 5] + (kdd_phase_advance ? kAdvance[block % 4] : 0.0));
    }
  }
  return out;
}

std::vector<PulseInstruction> dd_fragment(int pulses, double window, DdScheme scheme, int qubit_count,
                                          const std::vector<bool>& skip, bool kdd_phase_advance) {
  if (scheme == DdScheme::None) return {FreeEvolve{window, {}}};
  if (pulses <= 0) throw InvalidArgument("a decoupling scheme needs at least one pulse");
  if (!(window > 0)) throw InvalidArgument("decoupling window must be positive");
  if (scheme == DdScheme::Cpmg && pulses % 2 != 0) throw InvalidArgument("CPMG needs an even pulse count");
  if (scheme == DdScheme::Kdd) {
    const int unit = kdd_phase_advance ? 20 : 10;
    if (pulses % unit != 0) {
      throw InvalidArgument("KDD needs a multiple of " + std::to_string(unit) +
                            " pulses for the train to compose to the identity");
    }
  }
  const auto phases = dd_phases(pulses, scheme, kdd_phase_advance);
  const double tau = window / (2.0 * pulses);
  std::vector<PulseInstruction> out;
  for (int i = 0; i < pulses; ++i) {
    out.push_back(FreeEvolve{tau, {}});
    for (int q = 0; q < qubit_count; ++q) {
      if (!skip.empty() && skip[q]) continue;
      out.push_back(Rotate{q, kPi, phases[i]});
    }
    out.push_back(FreeEvolve{tau, {}});
  }
  return out;
}

std::vector<PulseInstruction> selective_recoupling_wrap(double inner_duration, int echo_qubit, DdSpec dd) {
  if (!(inner_duration > 0)) throw InvalidArgument("recoupling window must be positive");
  return {FreeEvolve{inner_duration / 2, dd}, Rotate{echo_qubit, kPi, 0.0}, FreeEvolve{inner_duration / 2, dd},
          Rotate{echo_qubit, kPi, 0.0}};
}

std::vector<double> phase_grid(int points) {
  if (points < 2) throw InvalidArgument("a phase grid needs at least two points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = kTwoPi * i / (points - 1);
  return out;
}

RamseyResult ramsey_scan(const RamseySpec& spec, const CouplingMatrix& j_sigma_minus, const NoiseModel& noise,
                         const EngineOptions& options) {
  const int n = static_cast<int>(spec.prep.size());
  if (n != j_sigma_minus.size()) throw InvalidArgument("preparation string does not match the coupling matrix");
  RamseyResult res;
  res.phases = spec.phases;
  res.shots = spec.shots;
  std::size_t index = 0;
  std::vector<int> superposed;
  for (int q = 0; q < n; ++q) {
    const char c = spec.prep[q];
    if (c == '+') {
      superposed.push_back(q);
    } else if (c == '1') {
      index |= std::size_t{1} << kernels::bit_of(q, n);
    } else if (c != '0') {
      throw InvalidArgument(std::string("preparation character '") + c + "' is not one of 0, 1, +");
    }
  }
  if (superposed.empty()) throw InvalidArgument("Ramsey preparation needs one superposition qubit");
  if (superposed.size() > 1) res.flags.push_back("multiple-superposition-qubits: fringe interpretation invalid");
  res.analysis_qubit = superposed.front();

  PulseProgram prep(n);
  for (int q : superposed) prep.add(Rotate{q, kPi / 2, 0.0});
  if (spec.conditional_time > 0) {
    if (spec.echo_qubits.empty()) {
      prep.add(FreeEvolve{spec.conditional_time, spec.dd});
    } else {
      // Nested wraps: each echo qubit is decoupled from the rest.
      std::vector<PulseInstruction> body{FreeEvolve{spec.conditional_time, spec.dd}};
      for (int k : spec.echo_qubits) {
        std::vector<PulseInstruction> next;
        for (int half = 0; half < 2; ++half) {
          for (const auto& op : body) {
            if (const auto* w = std::get_if<FreeEvolve>(&op)) {
              FreeEvolve h = *w;
              h.duration /= 2;
              if (h.dd.active()) h.dd.pulses /= 2;
              next.push_back(h);
            } else {
              next.push_back(op);
            }
          }
          next.push_back(Rotate{k, kPi, 0.0});
        }
        body = std::move(next);
      }
      prep.append(body);
    }
  }

  QuantumState start = QuantumState::basis_state(n, index, spec.bases);
  NoiseModel windows = noise;
  windows.readout_enabled = false;
  RunResult mid = run_program(prep, start, j_sigma_minus, windows, options);

  CounterRng rng(spec.seed);
  for (double phi : spec.phases) {
    QuantumState s = mid.state;
    apply_rotation(s, res.analysis_qubit, kPi / 2, phi);
    double p = s.reduced(res.analysis_qubit)(1, 1).real();
    if (noise.readout_enabled) p = noise.readout_fidelity * p + (1.0 - noise.readout_fidelity) * (1.0 - p);
    p = std::clamp(p, 0.0, 1.0);
    res.probability.push_back(p);
    if (spec.shots > 0)
      res.sampled.push_back(static_cast<double>(rng.binomial(spec.shots, p)) / static_cast<double>(spec.shots));
  }
  return res;
}

}  // namespace magic
