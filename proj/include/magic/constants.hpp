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

#include "magic/types.hpp"

// CODATA 2018 values, 12 significant digits.
namespace magic::constants {

inline constexpr double kHbar = 1.05457181765e-34;          // J s
inline constexpr double kPlanck = 6.62607015000e-34;        // J s
inline constexpr double kBohrMagneton = 9.27401007830e-24;  // J / T
inline constexpr double kElementaryCharge = 1.60217663400e-19;  // C
inline constexpr double kCoulombConstant = 8.98755179237e9;     // N m^2 / C^2
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;    // kg

inline constexpr double kYb171MassAmu = 171.0;

}  // namespace magic::constants
