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

#include <doctest.h>

#include "magic/engine.hpp"
#include "magic/optimize.hpp"
#include "oracles.hpp"

using namespace magic;

namespace {

const CouplingMatrix kJ = CouplingMatrix::three_spin(kTwoPi * 30.0, kTwoPi * 20.0, kTwoPi * 35.0);

PulseProgram random_program(std::mt19937_64& g, int length) {
  std::uniform_int_distribution<int> op(0, 6), q(0, 2);
  std::uniform_real_distribution<double> ang(0, kTwoPi), dur(0.1e-3, 2e-3);
  PulseProgram p(3);
  for (int i = 0; i < length; ++i) {
    switch (op(g)) {
      case 0: p.add(Rotate{q(g), ang(g), ang(g)}); break;
      case 1: p.add(Rotate{q(g), kPi, ang(g)}); break;
      case 2: {
        // A full pi layer, the pattern the hoisting pass looks for.
        const double phi = ang(g);
        for (int k = 0; k < 3; ++k) p.add(Rotate{k, kPi, phi});
        break;
      }
      case 3: p.add(PhaseShift{q(g), ang(g)}); break;
      case 4: p.add(FreeEvolve{dur(g), {}}); break;
      case 5: p.add(Echo{q(g), ang(g)}); break;
      default: p.add(Rotate{q(g), kPi / 2, ang(g)}); break;
    }
  }
  if (g() % 2) p.add(Measure{});
  return p;
}

}  // namespace

TEST_CASE("optimization preserves the unitary on random programs") {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_program(g, 4 + trial % 20);
    optimize::Stats st;
    const auto o = optimize::optimize(p, {}, &st);
    CHECK_NOTHROW(o.validate());
    CHECK(oracle::phase_distance(program_unitary(o, kJ), program_unitary(p, kJ)) < 1e-9);
    CHECK(o.pulse_count() <= p.pulse_count());
    CHECK(st.pulses_before == p.pulse_count());
    CHECK(st.pulses_after == o.pulse_count());
    CHECK(o.evolution_time() == doctest::Approx(p.evolution_time()).epsilon(1e-14));
    // A second pass finds nothing left to remove.
    CHECK(optimize::optimize(o).pulse_count() <= o.pulse_count());
  }
}

TEST_CASE("each pass alone keeps the unitary") {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_program(g, 12);
    optimize::Options only_hoist{true, false, 1e-10}, only_merge{false, true, 1e-10};
    CHECK(oracle::phase_distance(program_unitary(optimize::optimize(p, only_hoist), kJ), program_unitary(p, kJ)) < 1e-9);
    CHECK(oracle::phase_distance(program_unitary(optimize::optimize(p, only_merge), kJ), program_unitary(p, kJ)) < 1e-9);
  }
}

TEST_CASE("identity pulses vanish and diagonal products become frames") {
  PulseProgram p(1);
  p.add(Rotate{0, 0.3, 0.7});
  p.add(Rotate{0, kTwoPi - 0.3, 0.7});
  CHECK(optimize::optimize(p).pulse_count() == 0);

  PulseProgram q(1);
  q.add(Rotate{0, kPi, 0.0});
  q.add(Rotate{0, kPi, 0.4});
  q.add(FreeEvolve{1e-3, {}});
  q.add(Rotate{0, kPi / 2, 0.0});
  const auto o = optimize::optimize(q);
  CHECK(o.pulse_count() == 1);
  CHECK(oracle::phase_distance(program_unitary(o, CouplingMatrix::zero(1)), program_unitary(q, CouplingMatrix::zero(1))) <
        1e-12);
}

TEST_CASE("relabel and measurement survive") {
  PulseProgram p(3);
  p.relabel = {2, 1, 0};
  p.add(Rotate{0, kPi / 2, 0});
  p.add(PhaseShift{1, 0.2});
  p.add(Measure{});
  const auto o = optimize::optimize(p);
  CHECK(o.relabel == p.relabel);
  REQUIRE(!o.instructions.empty());
  CHECK(std::holds_alternative<Measure>(o.instructions.back()));
}
