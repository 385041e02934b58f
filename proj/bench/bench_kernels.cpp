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

#include <benchmark/benchmark.h>

#include <random>

#include "magic/gates.hpp"
#include "magic/kernels.hpp"

using namespace magic;
namespace k = magic::kernels;

namespace {

ComplexMatrix density(int n) {
  std::mt19937_64 g(1);
  std::normal_distribution<double> nd;
  const int d = 1 << n;
  ComplexMatrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = Complex(nd(g), nd(g));
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

RealMatrix couplings(int n) {
  RealMatrix j = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) j(a, b) = j(b, a) = 100.0 / (b - a);
  return j;
}

void BM_Conjugate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexMatrix rho = density(n);
  const Matrix2c u = gates::rotation(0.7, 0.3);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) k::conjugate_one_qubit(rho, n, q, u);
    benchmark::DoNotOptimize(rho.data());
  }
}

void BM_ConjugateReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexMatrix rho = density(n);
  const Matrix2c u = gates::rotation(0.7, 0.3);
  std::vector<ComplexMatrix> big;
  for (int q = 0; q < n; ++q) big.push_back(k::reference::embed(u, n, q));
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) rho = k::reference::conjugate(rho, big[q]);
    benchmark::DoNotOptimize(rho.data());
  }
}

void BM_IsingWindow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexMatrix rho = density(n);
  const RealVector e = k::ising_energies(couplings(n));
  const std::vector<double> rates(n, 62.5);
  for (auto _ : state) {
    k::ising_window(rho, e, 1e-4, rates);
    benchmark::DoNotOptimize(rho.data());
  }
}

void BM_IsingWindowReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexMatrix rho = density(n);
  const ComplexMatrix u = k::reference::ising_unitary(couplings(n), 1e-4);
  const std::vector<double> rates(n, 62.5);
  for (auto _ : state) {
    rho = k::reference::dephase(k::reference::conjugate(rho, u), 1e-4, rates);
    benchmark::DoNotOptimize(rho.data());
  }
}

}  // namespace

BENCHMARK(BM_Conjugate)->DenseRange(3, 9, 2);
BENCHMARK(BM_ConjugateReference)->DenseRange(3, 9, 2);
BENCHMARK(BM_IsingWindow)->DenseRange(3, 9, 2);
BENCHMARK(BM_IsingWindowReference)->DenseRange(3, 9, 2);

BENCHMARK_MAIN();
