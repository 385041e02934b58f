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

#include "magic/program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "magic/config.hpp"
#include "magic/error.hpp"
#include "magic/types.hpp"

namespace magic {

std::string to_string(DdScheme s) {
  switch (s) {
    case DdScheme::None: return "none";
    case DdScheme::Cpmg: return "cpmg";
    case DdScheme::Kdd: return "kdd";
  }
  return "none";
}

DdScheme parse_dd_scheme(const std::string& token) {
  std::string t = token;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "none") return DdScheme::None;
  if (t == "cpmg") return DdScheme::Cpmg;
  if (t == "kdd") return DdScheme::Kdd;
  throw InvalidArgument("unknown DD scheme '" + token + "'");
}

PulseProgram& PulseProgram::append(const std::vector<PulseInstruction>& fragment) {
  instructions.insert(instructions.end(), fragment.begin(), fragment.end());
  return *this;
}

namespace {

struct Validator {
  int n;
  std::size_t index;
  void qubit(int q) const {
    if (q < 0 || q >= n) {
      throw InvalidArgument("instruction " + std::to_string(index + 1) + " addresses qubit " +
                            std::to_string(q + 1) + " on a " + std::to_string(n) +
                            "-qubit register");
    }
  }
  void operator()(const Rotate& r) const {
    qubit(r.qubit);
    if (!(r.theta >= 0.0 && r.theta <= kTwoPi + 1e-12) || !std::isfinite(r.phi)) {
      throw InvalidArgument("instruction " + std::to_string(index + 1) +
                            ": rotation angle must lie in [0, 2pi]");
    }
  }
  void operator()(const PhaseShift& p) const { qubit(p.qubit); }
  void operator()(const FreeEvolve& e) const {
    if (!(e.duration >= 0.0) || !std::isfinite(e.duration)) {
      throw InvalidArgument("instruction " + std::to_string(index + 1) +
                            ": evolution time must be non-negative");
    }
    if (e.dd.pulses < 0) throw InvalidArgument("negative DD pulse count");
  }
  void operator()(const TransferBasis& t) const {
    if (t.qubit != TransferBasis::kAllQubits) qubit(t.qubit);
  }
  void operator()(const Echo& e) const { qubit(e.qubit); }
  void operator()(const Measure&) const {}
};

}  // namespace

void PulseProgram::validate() const {
  if (qubit_count < 1) throw InvalidArgument("program must declare at least one qubit");
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    std::visit(Validator{qubit_count, i}, instructions[i]);
    if (std::holds_alternative<Measure>(instructions[i]) && i + 1 != instructions.size()) {
      throw InvalidArgument("MEAS must be the last instruction");
    }
  }
  if (!relabel.empty()) {
    if (static_cast<int>(relabel.size()) != qubit_count) {
      throw InvalidArgument("relabel permutation has the wrong length");
    }
    std::vector<int> sorted(relabel);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < qubit_count; ++i)
      if (sorted[i] != i) throw InvalidArgument("relabel is not a permutation");
  }
}

double PulseProgram::evolution_time() const {
  double t = 0.0;
  for (const auto& op : instructions)
    if (const auto* e = std::get_if<FreeEvolve>(&op)) t += e->duration;
  return t;
}

int PulseProgram::pulse_count() const {
  int count = 0;
  for (const auto& op : instructions)
    if (std::holds_alternative<Rotate>(op) || std::holds_alternative<Echo>(op)) ++count;
  return count;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string qubit_token(int q) { return std::to_string(q + 1); }

struct Formatter {
  std::string operator()(const Rotate& r) const {
    return "R " + qubit_token(r.qubit) + " " + num(r.theta) + " " + num(r.phi);
  }
  std::string operator()(const PhaseShift& p) const {
    return "PH " + qubit_token(p.qubit) + " " + num(p.phi);
  }
  std::string operator()(const FreeEvolve& e) const {
    std::string s = "EV " + num(e.duration);
    if (e.dd.scheme != DdScheme::None)
      s += " dd=" + std::to_string(e.dd.pulses) + "," + to_string(e.dd.scheme);
    return s;
  }
  std::string operator()(const TransferBasis& t) const {
    return "XFER " + (t.qubit == TransferBasis::kAllQubits ? std::string("all") : qubit_token(t.qubit)) +
           " " + to_string(t.target);
  }
  std::string operator()(const Echo& e) const {
    return "ECHO " + qubit_token(e.qubit) + " " + num(e.phi);
  }
  std::string operator()(const Measure&) const { return "MEAS"; }
};

}  // namespace

std::string format_instruction(const PulseInstruction& op) { return std::visit(Formatter{}, op); }

void write_program(std::ostream& out, const PulseProgram& program) {
  out << "QUBITS " << program.qubit_count << '\n';
  if (!program.relabel.empty()) {
    out << "RELABEL";
    for (int p : program.relabel) out << ' ' << p + 1;
    out << '\n';
  }
  for (const auto& op : program.instructions) out << format_instruction(op) << '\n';
}

PulseProgram parse_program(std::istream& in, const std::string& source, int default_qubits) {
  PulseProgram program(default_qubits);
  bool declared = false;
  std::string raw;
  int line_no = 0;
  std::vector<int> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::istringstream line(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::vector<std::string> tok;
    for (std::string t; line >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    std::string op = tok[0];
    std::transform(op.begin(), op.end(), op.begin(), [](unsigned char c) { return std::toupper(c); });

    auto need = [&](std::size_t count) {
      if (tok.size() != count) {
        throw ParseError(source, line_no, op + " expects " + std::to_string(count - 1) + " argument(s)");
      }
    };
    auto qubit = [&](const std::string& t) {
      try {
        std::size_t used = 0;
        const int q = std::stoi(t, &used);
        if (used != t.size() || q < 1) throw std::invalid_argument(t);
        return q - 1;
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad qubit index '" + t + "' (qubits are 1-based)");
      }
    };
    auto angle = [&](const std::string& t) {
      try {
        return parse_scalar(t);
      } catch (const InvalidArgument& e) {
        throw ParseError(source, line_no, e.what());
      }
    };

    try {
      if (op == "QUBITS") {
        need(2);
        program.qubit_count = qubit(tok[1]) + 1;
        declared = true;
        continue;
      }
      if (op == "RELABEL") {
        program.relabel.clear();
        for (std::size_t i = 1; i < tok.size(); ++i) program.relabel.push_back(qubit(tok[i]));
        continue;
      }
      if (op == "R") {
        need(4);
        program.add(Rotate{qubit(tok[1]), angle(tok[2]), angle(tok[3])});
      } else if (op == "PH") {
        need(3);
        program.add(PhaseShift{qubit(tok[1]), angle(tok[2])});
      } else if (op == "EV") {
        if (tok.size() != 2 && tok.size() != 3) throw ParseError(source, line_no, "EV expects <seconds> [dd=<n>,<scheme>]");
        FreeEvolve ev{angle(tok[1]), {}};
        if (tok.size() == 3) {
          const std::string& d = tok[2];
          const auto comma = d.find(',');
          if (d.rfind("dd=", 0) != 0 || comma == std::string::npos) {
            throw ParseError(source, line_no, "DD annotation must read dd=<n>,<scheme>");
          }
          ev.dd.pulses = std::stoi(d.substr(3, comma - 3));
          ev.dd.scheme = parse_dd_scheme(d.substr(comma + 1));
        }
        program.add(ev);
      } else if (op == "XFER") {
        need(3);
        TransferBasis t;
        std::string target = tok[1];
        std::transform(target.begin(), target.end(), target.begin(), [](unsigned char c) { return std::tolower(c); });
        t.qubit = target == "all" ? TransferBasis::kAllQubits : qubit(tok[1]);
        t.target = parse_basis(tok[2]);
        program.add(t);
      } else if (op == "ECHO") {
        need(3);
        program.add(Echo{qubit(tok[1]), angle(tok[2])});
      } else if (op == "MEAS") {
        need(1);
        program.add(Measure{});
      } else {
        throw ParseError(source, line_no, "unknown instruction '" + tok[0] + "'");
      }
      lines.push_back(line_no);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!declared && program.qubit_count < 1) {
    throw ParseError(source, line_no, "register size unknown: add a QUBITS line");
  }
  try {
    program.validate();
  } catch (const InvalidArgument& e) {
    // Map "instruction k" failures back to the source line where possible.
    std::string what = e.what();
    int where = line_no;
    const auto pos = what.find("instruction ");
    if (pos != std::string::npos) {
      const int k = std::atoi(what.c_str() + pos + 12);
      if (k >= 1 && k <= static_cast<int>(lines.size())) where = lines[k - 1];
    }
    throw ParseError(source, where, what);
  }
  return program;
}

PulseProgram load_program(const std::string& path, int default_qubits) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pulse program " + path);
  return parse_program(in, path, default_qubits);
}

}  // namespace magic
