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

#include "magic/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "magic/error.hpp"

namespace magic {

Basis parse_basis(const std::string& token) {
  std::string t = token;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "-" || t == "sigma-" || t == "sigma_minus") return Basis::SigmaMinus;
  if (t == "+" || t == "sigma+" || t == "sigma_plus") return Basis::SigmaPlus;
  if (t == "0" || t == "pi") return Basis::Pi;
  throw InvalidArgument("unknown encoding basis '" + token + "'");
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::SigmaMinus: return "sigma-";
    case Basis::SigmaPlus: return "sigma+";
    case Basis::Pi: return "pi";
  }
  return "?";
}

char basis_symbol(Basis b) {
  switch (b) {
    case Basis::SigmaMinus: return '-';
    case Basis::SigmaPlus: return '+';
    case Basis::Pi: return '0';
  }
  return '?';
}

namespace encoding {

TopologyAssignment TopologyAssignment::parse(const std::string& text, std::string label) {
  TopologyAssignment a;
  a.label = std::move(label);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    a.qubits.push_back({parse_basis(item)});
  }
  if (a.qubits.empty()) throw InvalidArgument("empty topology assignment");
  return a;
}

TopologyAssignment TopologyAssignment::uniform(int n, Basis basis, std::string label) {
  TopologyAssignment a;
  a.label = std::move(label);
  a.qubits.assign(n, {basis});
  return a;
}

std::vector<Basis> TopologyAssignment::bases() const {
  std::vector<Basis> out;
  for (const auto& q : qubits) out.push_back(q.basis);
  return out;
}

std::string TopologyAssignment::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) s += ',';
    s += basis_symbol(qubits[i].basis);
  }
  return s;
}

CouplingMatrix effective_couplings(const CouplingMatrix& base, const TopologyAssignment& assignment) {
  if (assignment.size() != base.size()) {
    throw InvalidArgument("topology has " + std::to_string(assignment.size()) +
                          " qubits but the coupling matrix is " + std::to_string(base.size()) +
                          "x" + std::to_string(base.size()));
  }
  const int n = base.size();
  RealMatrix j = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) j(a, b) = assignment.qubits[a].m_F() * assignment.qubits[b].m_F() * std::abs(base(a, b));
  return CouplingMatrix(std::move(j), "effective(" + assignment.to_string() + ")");
}

CouplingMatrix encoded_couplings(const CouplingMatrix& sigma_minus, std::span<const Basis> bases) {
  const int n = sigma_minus.size();
  if (static_cast<int>(bases.size()) != n) throw InvalidArgument("basis list does not match register");
  RealMatrix j = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) j(a, b) = magnetic_number(bases[a]) * magnetic_number(bases[b]) * sigma_minus(a, b);
  return CouplingMatrix(std::move(j), sigma_minus.provenance());
}

TopologyAssignment topology_preset(char label, const PresetOptions& options) {
  auto a = TopologyAssignment::uniform(3, Basis::SigmaMinus, std::string(1, label));
  auto check = [](int ion) {
    if (ion < 0 || ion > 2) throw InvalidArgument("preset ion index out of range");
    return ion;
  };
  switch (std::toupper(static_cast<unsigned char>(label))) {
    case 'A': break;
    case 'B': a.qubits[check(options.opposite_sign_flip)].basis = Basis::SigmaPlus; break;
    case 'C': a.qubits[check(options.same_sign_flip)].basis = Basis::SigmaPlus; break;
    case 'D': a.qubits[check(options.decoupled)].basis = Basis::Pi; break;
    case 'E':
      for (auto& q : a.qubits) q.basis = Basis::Pi;
      break;
    default: throw InvalidArgument(std::string("unknown topology preset '") + label + "'");
  }
  a.label = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(label))));
  return a;
}

namespace {

MicrowavePulse::Transition sigma_transition(Basis b) {
  return b == Basis::SigmaPlus ? MicrowavePulse::Transition::SigmaPlus
                               : MicrowavePulse::Transition::SigmaMinus;
}

bool is_sigma(Basis b) { return b != Basis::Pi; }

void check_pair(Basis from, Basis to) {
  if (from == to) throw InvalidArgument("basis transfer needs distinct source and target bases");
  if (is_sigma(from) && is_sigma(to)) {
    throw InvalidArgument("direct sigma- <-> sigma+ transfer is not supported; route it through the pi basis");
  }
}

}  // namespace

std::vector<PulseInstruction> transfer_sequence(int qubit, Basis from, Basis to, int qubit_count) {
  if (qubit < 0 || qubit >= qubit_count) throw InvalidArgument("transfer qubit out of range");
  check_pair(from, to);
  const Basis sigma = is_sigma(from) ? from : to;
  TransferBasis t;
  t.qubit = qubit;
  t.target = to;
  t.pulses = {{MicrowavePulse::Transition::Pi, -1, 0.0},
              {sigma_transition(sigma), qubit, 0.0},
              {MicrowavePulse::Transition::Pi, -1, 0.0}};
  return {t};
}

std::vector<PulseInstruction> transfer_all_sequence(std::span<const Basis> from, Basis to) {
  TransferBasis t;
  t.qubit = TransferBasis::kAllQubits;
  t.target = to;
  t.pulses.push_back({MicrowavePulse::Transition::Pi, -1, 0.0});
  for (std::size_t q = 0; q < from.size(); ++q) {
    check_pair(from[q], to);
    const Basis sigma = is_sigma(from[q]) ? from[q] : to;
    t.pulses.push_back({sigma_transition(sigma), static_cast<int>(q), 0.0});
  }
  t.pulses.push_back({MicrowavePulse::Transition::Pi, -1, 0.0});
  return {t};
}

std::vector<PulseInstruction> memory_protocol(int qubit, Basis home, double duration,
                                              int qubit_count, DdSpec dd, double echo_phase) {
  if (!is_sigma(home)) throw InvalidArgument("memory protocol starts from a sigma basis");
  std::vector<PulseInstruction> out;
  auto add = [&](const std::vector<PulseInstruction>& f) { out.insert(out.end(), f.begin(), f.end()); };
  add(transfer_sequence(qubit, home, Basis::Pi, qubit_count));
  out.push_back(FreeEvolve{duration / 2, dd});
  add(transfer_sequence(qubit, Basis::Pi, home, qubit_count));
  out.push_back(Echo{qubit, echo_phase});
  add(transfer_sequence(qubit, home, Basis::Pi, qubit_count));
  out.push_back(FreeEvolve{duration / 2, dd});
  add(transfer_sequence(qubit, Basis::Pi, home, qubit_count));
  return out;
}

int upper_level(Basis basis) {
  switch (basis) {
    case Basis::SigmaMinus: return 1;
    case Basis::Pi: return 2;
    case Basis::SigmaPlus: return 3;
  }
  return 1;
}

ComplexMatrix level_unitary(std::span<const MicrowavePulse> pulses, int ion) {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  for (const auto& p : pulses) {
    if (p.qubit != -1 && p.qubit != ion) continue;
    int upper = 2;
    switch (p.transition) {
      case MicrowavePulse::Transition::Pi: upper = 2; break;
      case MicrowavePulse::Transition::SigmaMinus: upper = 1; break;
      case MicrowavePulse::Transition::SigmaPlus: upper = 3; break;
    }
    // Resonant pi pulse: -i (cos(phi) X + sin(phi) Y) on {F=0, upper}.
    ComplexMatrix g = ComplexMatrix::Identity(4, 4);
    const Complex minus_i(0.0, -1.0);
    g(0, 0) = 0.0;
    g(upper, upper) = 0.0;
    g(0, upper) = minus_i * Complex(std::cos(p.phase), -std::sin(p.phase));
    g(upper, 0) = minus_i * Complex(std::cos(p.phase), std::sin(p.phase));
    u = g * u;
  }
  return u;
}

}  // namespace encoding
}  // namespace magic
