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

#include <string>

namespace magic {

/// Hyperfine encoding of the |up> state: m_F = -1, +1 or 0.
enum class Basis { SigmaMinus, SigmaPlus, Pi };

constexpr int magnetic_number(Basis b) {
  switch (b) {
    case Basis::SigmaMinus: return -1;
    case Basis::SigmaPlus: return +1;
    case Basis::Pi: return 0;
  }
  return 0;
}

/// Accepts `-`, `+`, `0`, `sigma-`, `sigma+`, `pi`.
Basis parse_basis(const std::string& token);
/// Short form used in programs: `sigma-`, `sigma+`, `pi`.
std::string to_string(Basis b);
/// One-character form used in topology strings: `-`, `+`, `0`.
char basis_symbol(Basis b);

}  // namespace magic
