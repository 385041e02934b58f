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
#include <span>
#include <vector>

namespace magic {

/// Counter-based generator: draw i of stream s is mix(key(seed, s) + i * golden), with the
/// SplitMix64 finalizer as the mixing function. Draws never depend on platform or thread count.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + kGolden))) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(key_ + (counter_++) * kGolden); }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t counter() const { return counter_; }

  /// Sum of `trials` Bernoulli(p) draws, one uniform per trial.
  long binomial(long trials, double p) {
    long k = 0;
    for (long t = 0; t < trials; ++t) k += uniform() < p ? 1 : 0;
    return k;
  }

  /// Counts over outcomes; one uniform per shot, resolved by the cumulative distribution.
  std::vector<long> multinomial(long shots, std::span<const double> p) {
    std::vector<long> counts(p.size(), 0);
    for (long s = 0; s < shots; ++s) {
      const double u = uniform();
      double acc = 0.0;
      std::size_t k = 0;
      for (; k + 1 < p.size(); ++k) {
        acc += p[k];
        if (u < acc) break;
      }
      ++counts[k];
    }
    return counts;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace magic
