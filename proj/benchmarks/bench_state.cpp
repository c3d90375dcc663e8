// Copyright 2026 The holoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "holoq/algebra.hpp"
#include "holoq/state.hpp"

namespace {

using holoq::Complex;
using holoq::Matrix;
using holoq::QutritState;

QutritState random_state(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  QutritState state;
  state.num_sites = n;
  state.amplitudes.resize(
      static_cast<Eigen::Index>(holoq::power_of_three(n)));
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    state.amplitudes(i) = Complex(dist(gen), dist(gen));
  }
  state.amplitudes /= std::sqrt(state.amplitudes.squaredNorm());
  return state;
}

void BM_ApplyOneSite(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  std::mt19937_64 gen(7);
  const QutritState state = random_state(n, gen);
  const Matrix op = holoq::pauli_x();
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::apply_one_site(state, op, n / 2));
  }
  bench.SetComplexityN(static_cast<benchmark::IterationCount>(
      holoq::power_of_three(n)));
}
BENCHMARK(BM_ApplyOneSite)->DenseRange(2, 8)->Complexity();

void BM_ApplyTwoSite(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  std::mt19937_64 gen(7);
  const QutritState state = random_state(n, gen);
  const Matrix op =
      holoq::kron(holoq::pauli_x(), holoq::pauli_z());
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::apply_two_site(state, op, 0, n - 1));
  }
  bench.SetComplexityN(static_cast<benchmark::IterationCount>(
      holoq::power_of_three(n)));
}
BENCHMARK(BM_ApplyTwoSite)->DenseRange(2, 8)->Complexity();

void BM_ProjectLogical(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  std::mt19937_64 gen(7);
  const QutritState state = random_state(n, gen);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::project_logical(state));
  }
}
BENCHMARK(BM_ProjectLogical)->DenseRange(2, 8);

}  // namespace
