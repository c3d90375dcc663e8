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

#include <array>
#include <random>

#include "holoq/analysis.hpp"
#include "holoq/estimation.hpp"
#include "holoq/holonomy.hpp"
#include "holoq/noise.hpp"
#include "holoq/state.hpp"

namespace {

using holoq::Circuit;
using holoq::Matrix;
using holoq::QutritState;

QutritState random_logical(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  const Eigen::Index dim = Eigen::Index{1} << n;
  holoq::Vector amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    amps(i) = holoq::Complex(dist(gen), dist(gen));
  }
  amps /= std::sqrt(amps.squaredNorm());
  return holoq::embed_logical_amplitudes(n, amps);
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

void BM_ClosedFormReport(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  std::mt19937_64 gen(11);
  const QutritState state = random_logical(n, gen);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::closed_form_report(state, 0, n - 1));
  }
}
BENCHMARK(BM_ClosedFormReport)->DenseRange(2, 8);

void BM_SampledDetection(benchmark::State& bench) {
  std::mt19937_64 gen(11);
  const QutritState state = random_logical(3, gen);
  const auto trials = static_cast<std::uint64_t>(bench.range(0));
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::sampled_report(state, 0, 2, trials, 5));
  }
}
BENCHMARK(BM_SampledDetection)->RangeMultiplier(10)->Range(100, 100000);

// Exhaustive single-fault ensemble: a CNOT ladder with one faulty gate
// drawn over every (location, label) branch.
void BM_RunExperimentExact(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  std::mt19937_64 gen(11);
  Circuit circuit;
  for (int s = 0; s + 1 < n; ++s) {
    const std::array<int, 2> sites{s, s + 1};
    circuit.push_back(holoq::embed_logical_unitary(cnot(), sites));
  }
  const holoq::Observable obs = holoq::observable_from_logical(
      holoq::logical_pauli_string(std::string(static_cast<std::size_t>(n), 'Z')),
      n);
  const QutritState initial = random_logical(n, gen);
  holoq::NoiseSpec noise;
  holoq::RunOptions options;
  options.trials = 0;
  options.keep_records = false;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(
        holoq::run_experiment(initial, circuit, noise, obs, options));
  }
}
BENCHMARK(BM_RunExperimentExact)->DenseRange(2, 5);

}  // namespace
