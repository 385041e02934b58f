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

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "magic/chain.hpp"
#include "magic/encoding.hpp"
#include "magic/error.hpp"
#include "magic/qft.hpp"
#include "magic/records.hpp"
#include "magic/scenario.hpp"

namespace {

using namespace magic;
using records::Cell;
using records::RunRecord;
using records::Table;

Table coupling_table(const CouplingMatrix& j, const std::string& name = "couplings") {
  Table t(name, {"i", "j", "J_rad_s", "J_hz"});
  for (int a = 0; a < j.size(); ++a)
    for (int b = a + 1; b < j.size(); ++b)
      t.add_row({static_cast<long long>(a + 1), static_cast<long long>(b + 1), j(a, b), j(a, b) / kTwoPi});
  return t;
}

void finish(const RunRecord& rec, const std::string& main_table) {
  const auto dir = records::output_root() / rec.scenario;
  const auto files = records::emit_records(rec, dir);
  if (const Table* t = rec.find(main_table)) records::write_csv(std::cout, *t);
  std::cerr << "wrote " << files.size() << " files to " << dir.string() << "\n";
}

int cmd_chain(const std::string& path) {
  const auto cfg = KeyValueConfig::load(path);
  const auto trap = chain::TrapConfig::from_config(cfg);
  const auto geometry = chain::equilibrium_positions(trap);
  const auto modes = chain::normal_modes(trap, geometry);
  const auto zeeman = chain::zeeman_profile(trap, geometry);
  const auto j = chain::coupling_matrix(trap, modes, zeeman.gradient_sensitivity);

  RunRecord rec;
  rec.scenario = "chain";
  rec.metadata.push_back({"config", path});
  rec.metadata.push_back({"length_scale_m", records::format_cell(geometry.length_scale)});
  rec.metadata.push_back({"newton_iterations", std::to_string(geometry.iterations)});

  Table ions("ions", {"ion", "position_um", "scaled_position", "field_T", "sensitivity_rad_s_m", "offset_hz"});
  for (int i = 0; i < trap.ion_count; ++i)
    ions.add_row({static_cast<long long>(i + 1), geometry.positions[i] * 1e6, geometry.scaled[i], zeeman.fields[i],
                  zeeman.gradient_sensitivity[i], zeeman.addressing_offsets[i]});
  std::vector<std::string> cols = {"mode", "frequency_hz", "ratio", "extent_m"};
  for (int i = 0; i < trap.ion_count; ++i) cols.push_back("S" + std::to_string(i + 1));
  Table m("modes", cols);
  for (int n = 0; n < trap.ion_count; ++n) {
    std::vector<Cell> row = {static_cast<long long>(n + 1), modes.frequencies[n] / kTwoPi,
                             modes.frequencies[n] / modes.frequencies[0], modes.ground_state_extents[n]};
    for (int i = 0; i < trap.ion_count; ++i) row.push_back(modes.modes(i, n));
    m.add_row(std::move(row));
  }
  rec.tables.push_back(std::move(ions));
  rec.tables.push_back(std::move(m));
  rec.tables.push_back(coupling_table(j));
  finish(rec, "modes");
  return 0;
}

int cmd_couplings(const std::string& path, const std::string& topology) {
  const auto cfg = KeyValueConfig::load(path);
  const auto trap = chain::TrapConfig::from_config(cfg);
  const auto base = chain::trap_couplings(trap);
  RunRecord rec;
  rec.scenario = "couplings";
  rec.metadata.push_back({"config", path});
  CouplingMatrix j = base;
  if (!topology.empty()) {
    if (topology.size() != 1) throw InvalidArgument("--topology takes one of A, B, C, D, E");
    const auto assignment = encoding::topology_preset(topology[0]);
    if (assignment.size() != base.size()) throw InvalidArgument("topology presets describe three ions");
    j = encoding::effective_couplings(base, assignment);
    rec.metadata.push_back({"topology", topology + " " + assignment.to_string()});
  }
  rec.tables.push_back(coupling_table(j));
  const auto dir = records::output_root() / rec.scenario;
  records::emit_records(rec, dir);
  save_coupling_matrix(dir / "couplings.txt", j);
  write_coupling_matrix(std::cout, j);
  return 0;
}

int cmd_run(const std::string& program, const std::string& matrix, bool noise, long shots,
            const std::optional<std::uint64_t>& seed, const std::string& input) {
  scenario::Scenario s;
  s.name = "run";
  s.kind = scenario::Kind::Program;
  s.couplings = load_coupling_matrix(matrix);
  s.program = load_program(program, s.couplings->size());
  s.noise = noise;
  s.noise_model = NoiseModel::calibrated();
  s.shots = shots;
  if (seed) {
    s.seed = *seed;
    s.seed_set = true;
  }
  if (!input.empty()) s.inputs = {input};
  finish(scenario::run(s), "populations");
  return 0;
}

int cmd_compile(const std::string& matrix, const std::string& form, bool decoupling) {
  const auto j = load_coupling_matrix(matrix);
  const auto f = qft::parse_form(form);
  const auto plan = qft::compile_qft(j, decoupling ? qft::standard_decoupling() : qft::EmitOptions{});
  const auto dir = records::output_root() / "compile-qft";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "plan.txt");
    out << qft::format_plan(plan);
  }
  for (auto [name, prog] : {std::pair{"qft_exact.mfp", &plan.exact}, std::pair{"qft_optimized.mfp", &plan.optimized}}) {
    std::ofstream out(dir / name);
    write_program(out, *prog);
  }
  std::cerr << qft::format_plan(plan);
  write_program(std::cout, f == qft::Form::Exact ? plan.exact : plan.optimized);
  return 0;
}

int cmd_scenario(const std::string& which) {
  const auto names = scenario::builtin_names();
  const bool builtin = std::find(names.begin(), names.end(), which) != names.end();
  const auto s = builtin ? scenario::builtin(which) : scenario::load(which);
  const auto rec = scenario::run(s);
  const auto dir = records::output_root() / rec.scenario;
  const auto files = records::emit_records(rec, dir);
  for (const auto& t : rec.tables) std::cout << t.name << ": " << t.rows.size() << " rows\n";
  std::cout << "wrote " << files.size() << " files to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level compiler and simulator for magnetically coupled trapped-ion spins"};
  app.set_version_flag("--version", MAGIC_FORGE_VERSION);
  app.require_subcommand(1);

  std::string config, topology, program, matrix, form = "optimized", which, input;
  bool noise = false, no_dd = false;
  long shots = 0;
  std::uint64_t seed_value = 0;

  auto* chain_cmd = app.add_subcommand("chain", "Chain equilibrium and couplings of a trap config");
  chain_cmd->add_option("config", config, "Trap configuration file")->required()->check(CLI::ExistingFile);

  auto* coup_cmd = app.add_subcommand("couplings", "Coupling matrix for a trap config, optionally encoded");
  coup_cmd->add_option("config", config, "Trap configuration file")->required()->check(CLI::ExistingFile);
  coup_cmd->add_option("--topology", topology, "Topology preset A..E")->check(CLI::IsMember({"A", "B", "C", "D", "E"}));

  auto* run_cmd = app.add_subcommand("run", "Simulate a pulse program");
  run_cmd->add_option("program", program, "Pulse program file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--j", matrix, "Coupling matrix file (rad/s)")->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("--noise", noise, "Enable the calibrated noise channels");
  run_cmd->add_option("--shots", shots, "Number of samples (0: exact probabilities)")->check(CLI::NonNegativeNumber);
  auto* seed_opt = run_cmd->add_option("--seed", seed_value, "Seed for shot sampling");
  run_cmd->add_option("--input", input, "Initial product state label such as 0+1");

  auto* qft_cmd = app.add_subcommand("compile-qft", "Compile the three-qubit QFT for a coupling matrix");
  qft_cmd->add_option("--j", matrix, "Coupling matrix file (rad/s)")->required()->check(CLI::ExistingFile);
  qft_cmd->add_option("--form", form, "exact or optimized")->check(CLI::IsMember({"exact", "optimized"}));
  qft_cmd->add_flag("--no-dd", no_dd, "Emit plain free-evolution windows");

  auto* sc_cmd = app.add_subcommand("scenario", "Run a built-in scenario or a scenario file");
  sc_cmd->add_option("scenario", which, "fig1, fig2, fig4, fig5, table1 or a file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*chain_cmd) return cmd_chain(config);
    if (*coup_cmd) return cmd_couplings(config, topology);
    if (*run_cmd) {
      if (shots > 0 && seed_opt->count() == 0) throw InvalidArgument("--seed is required when --shots is given");
      std::optional<std::uint64_t> seed;
      if (seed_opt->count()) seed = seed_value;
      return cmd_run(program, matrix, noise, shots, seed, input);
    }
    if (*qft_cmd) return cmd_compile(matrix, form, !no_dd);
    if (*sc_cmd) return cmd_scenario(which);
  } catch (const ParseError& e) {
    std::cerr << "magic-forge: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "magic-forge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "magic-forge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
