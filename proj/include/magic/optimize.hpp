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

#include "magic/program.hpp"

namespace magic::optimize {

struct Options {
  /// Move a layer of pi pulses that ends a segment on every qubit past the next window.
  bool hoist_pi_layers = true;
  /// Collapse each qubit's pulses between windows and push z frames forward.
  bool merge_pulses = true;
  double tolerance = 1e-10;
};

struct Stats {
  int hoisted_layers = 0;
  int frames_absorbed = 0;
  int pulses_before = 0;
  int pulses_after = 0;
};

/// Rewrites `program` into an equivalent one with fewer pulses; the noiseless unitary is kept up
/// to a global phase. Windows with decoupling trains are treated as diagonal, which holds for
/// the pulse counts accepted by `dd_fragment`.
PulseProgram optimize(const PulseProgram& program, const Options& options = {}, Stats* stats = nullptr);

}  // namespace magic::optimize
