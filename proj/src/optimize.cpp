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

#include "magic/optimize.hpp"

#include <cmath>
#include <optional>

#include "magic/gates.hpp"

namespace magic::optimize {

namespace {

struct Segment {
  std::vector<PulseInstruction> ops;  // Rotate, PhaseShift, Echo
};

struct Item {
  bool is_segment = true;
  Segment segment;
  PulseInstruction barrier;  // FreeEvolve, TransferBasis, Measure
};

bool single_qubit(const PulseInstruction& op) {
  return std::holds_alternative<Rotate>(op) || std::holds_alternative<PhaseShift>(op) ||
         std::holds_alternative<Echo>(op);
}

int qubit_of(const PulseInstruction& op) {
  if (const auto* r = std::get_if<Rotate>(&op)) return r->qubit;
  if (const auto* p = std::get_if<PhaseShift>(&op)) return p->qubit;
  return std::get<Echo>(op).qubit;
}

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

bool is_pi_pulse(const PulseInstruction& op, double tol) {
  if (std::holds_alternative<Echo>(op)) return true;
  if (const auto* r = std::get_if<Rotate>(&op)) return std::abs(r->theta - kPi) < tol;
  return false;
}

std::vector<Item> split(const PulseProgram& p) {
  std::vector<Item> items;
  for (const auto& op : p.instructions) {
    if (single_qubit(op)) {
      if (items.empty() || !items.back().is_segment) items.push_back(Item{});
      items.back().segment.ops.push_back(op);
    } else {
      items.push_back(Item{false, {}, op});
    }
  }
  return items;
}

int hoist(std::vector<Item>& items, int n, double tol) {
  int hoisted = 0;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    if (!items[i].is_segment || items[i + 1].is_segment) continue;
    if (!std::holds_alternative<FreeEvolve>(items[i + 1].barrier)) continue;
    auto& ops = items[i].segment.ops;
    std::vector<std::optional<std::size_t>> last(n);
    for (std::size_t k = 0; k < ops.size(); ++k) last[qubit_of(ops[k])] = k;
    bool layer = true;
    for (int q = 0; q < n && layer; ++q) layer = last[q] && is_pi_pulse(ops[*last[q]], tol);
    if (!layer) continue;

    std::vector<PulseInstruction> moved, kept;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      bool is_last = false;
      for (int q = 0; q < n; ++q) is_last = is_last || (last[q] && *last[q] == k);
      (is_last ? moved : kept).push_back(ops[k]);
    }
    ops = std::move(kept);
    if (i + 2 >= items.size() || !items[i + 2].is_segment) items.insert(items.begin() + i + 2, Item{});
    auto& next = items[i + 2].segment.ops;
    next.insert(next.begin(), moved.begin(), moved.end());
    ++hoisted;
  }
  return hoisted;
}

Matrix2c matrix_of(const PulseInstruction& op) {
  if (const auto* r = std::get_if<Rotate>(&op)) return gates::rotation(r->theta, r->phi);
  if (const auto* p = std::get_if<PhaseShift>(&op)) return gates::phase(p->phi);
  return gates::rotation(kPi, std::get<Echo>(op).phi);
}

// Re-emits one qubit's pulses with the pending frame chi pushed through them.
void propagate(const std::vector<PulseInstruction>& ops, double& chi, double tol,
               std::vector<PulseInstruction>& out, int& absorbed) {
  for (const auto& op : ops) {
    if (const auto* p = std::get_if<PhaseShift>(&op)) {
      chi += p->phi;
    } else if (const auto* e = std::get_if<Echo>(&op)) {
      // R(pi, b) Phi(chi) = R(pi, b - chi)
      out.push_back(Echo{e->qubit, wrap_angle(e->phi - chi)});
      if (chi != 0.0) ++absorbed;
      chi = 0.0;
    } else {
      const auto& r = std::get<Rotate>(op);
      if (std::abs(r.theta - kPi) < tol) {
        out.push_back(Rotate{r.qubit, r.theta, wrap_angle(r.phi - chi)});
        if (chi != 0.0) ++absorbed;
        chi = 0.0;
      } else {
        // R(theta, phi) Phi(chi) = Phi(chi) R(theta, phi - 2 chi)
        out.push_back(Rotate{r.qubit, r.theta, wrap_angle(r.phi - 2.0 * chi)});
      }
    }
  }
}

void merge_segment(Segment& seg, std::vector<double>& frames, double tol, int& absorbed) {
  std::vector<int> order;
  std::vector<std::vector<PulseInstruction>> per_qubit(frames.size());
  for (const auto& op : seg.ops) {
    const int q = qubit_of(op);
    if (per_qubit[q].empty()) order.push_back(q);
    per_qubit[q].push_back(op);
  }
  std::vector<PulseInstruction> out;
  for (int q : order) {
    const auto& ops = per_qubit[q];
    bool has_echo = false;
    for (const auto& op : ops) has_echo = has_echo || std::holds_alternative<Echo>(op);
    double& chi = frames[q];
    if (!has_echo) {
      Matrix2c u = gates::phase(chi);
      for (const auto& op : ops) u = matrix_of(op) * u;
      if (std::abs(u(0, 1)) < tol && std::abs(u(1, 0)) < tol) {
        // Pure z rotation Phi(chi'), kept as a pending frame.
        const double c = 0.5 * (std::arg(u(1, 1)) - std::arg(u(0, 0)));
        const double reduced = std::remainder(c, kPi);
        chi = std::abs(reduced) < tol ? 0.0 : reduced;
        ++absorbed;
        continue;
      }
      if (std::abs(u(0, 0)) < tol && std::abs(u(1, 1)) < tol) {
        // Equatorial pi rotation: u is proportional to [[0, e^{-ib}], [e^{ib}, 0]].
        const double b = 0.5 * (std::arg(u(1, 0)) - std::arg(u(0, 1)));
        out.push_back(Rotate{q, kPi, wrap_angle(b)});
        chi = 0.0;
        continue;
      }
    }
    propagate(ops, chi, tol, out, absorbed);
  }
  seg.ops = std::move(out);
}

PulseProgram run_passes(const PulseProgram& program, bool hoist_layers, bool merge, double tolerance, Stats& st) {
  const int n = program.qubit_count;
  auto items = split(program);
  if (hoist_layers) st.hoisted_layers += hoist(items, n, tolerance);

  std::vector<double> frames(n, 0.0);
  if (merge)
    for (auto& it : items)
      if (it.is_segment) merge_segment(it.segment, frames, tolerance, st.frames_absorbed);

  PulseProgram out(n);
  out.relabel = program.relabel;
  std::optional<PulseInstruction> measure;
  for (auto& it : items) {
    if (it.is_segment) {
      out.append(it.segment.ops);
    } else if (std::holds_alternative<Measure>(it.barrier)) {
      measure = it.barrier;
    } else {
      out.add(it.barrier);
    }
  }
  for (int q = 0; q < n; ++q)
    if (std::abs(frames[q]) > tolerance) out.add(PhaseShift{q, frames[q]});
  if (measure) out.add(*measure);
  return out;
}

}  // namespace

PulseProgram optimize(const PulseProgram& program, const Options& options, Stats* stats) {
  program.validate();
  Stats st;
  st.pulses_before = program.pulse_count();
  // Merging first collapses pulse pairs that hoisting would otherwise split across a window.
  PulseProgram out = program;
  if (options.merge_pulses && options.hoist_pi_layers) out = run_passes(out, false, true, options.tolerance, st);
  out = run_passes(out, options.hoist_pi_layers, options.merge_pulses, options.tolerance, st);
  st.pulses_after = out.pulse_count();
  if (stats) *stats = st;
  out.validate();
  return out;
}

}  // namespace magic::optimize
