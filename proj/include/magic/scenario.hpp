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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "magic/chain.hpp"
#include "magic/coupling.hpp"
#include "magic/encoding.hpp"
#include "magic/program.hpp"
#include "magic/records.hpp"
#include "magic/state.hpp"

namespace magic::scenario {

enum class Kind {
  Conditional,  // Ramsey phase versus conditional time for each neighbor eigenstate
  Topology,     // effective couplings for the five presets plus a decoupled-memory probe
  Fringes,      // per-qubit Ramsey fringes after the QFT
  Period,       // output histograms for period-estimation inputs
  Fidelity,     // three-qubit and single-qubit fidelities per input state
  Program       // a user pulse program
};
std::string to_string(Kind k);
Kind parse_kind(const std::string& token);

struct Scenario {
  std::string name;
  Kind kind = Kind::Program;

  std::optional<chain::TrapConfig> trap;  // derives J when set and no explicit matrix is given
  std::optional<CouplingMatrix> couplings;
  encoding::TopologyAssignment topology;  // empty: all sigma-
  encoding::PresetOptions presets;
  std::optional<PulseProgram> program;

  bool noise = true;
  NoiseModel noise_model = NoiseModel::calibrated();
  bool decoupling = true;  // KDD trains in the QFT windows and 20 pulses in Ramsey windows
  long shots = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::vector<double> times;        // s, conditional scans
  std::vector<std::string> inputs;  // product-state labels
  int phase_points = 73;

  /// Throws InvalidArgument when shots are finite without a seed, or fields are inconsistent.
  void validate() const;
};

std::vector<std::string> builtin_names();
/// fig1, fig2, fig4, fig5, table1.
Scenario builtin(const std::string& name);

/// `[scenario]` keys: name, kind, shots, seed, noise, decoupling, topology ("-,+,0"),
/// coupling (matrix file), program (program file), times (s, comma list), inputs (comma list),
/// phase_points, flip_opposite / flip_same / decouple (1-based preset ions). Optional `[trap]`
/// and `[noise]` sections. Relative paths resolve against the scenario file.
Scenario load(const std::filesystem::path& path);
Scenario parse(std::istream& in, const std::string& source, const std::filesystem::path& base_dir = ".");

/// Coupling matrix used by a scenario: explicit matrix, else trap-derived, else the reference
/// calibrated couplings.
CouplingMatrix resolve_couplings(const Scenario& s);

records::RunRecord run(const Scenario& s);

}  // namespace magic::scenario
