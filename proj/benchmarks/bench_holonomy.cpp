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

#include "holoq/holonomy.hpp"

namespace {

void BM_IntegrateSchedule(benchmark::State& bench) {
  const int steps = static_cast<int>(bench.range(0));
  const holoq::PulseSchedule schedule = holoq::PulseSchedule::lambda_pulse(
      0.9, 0.4, holoq::PulseSchedule::kPiArea, steps);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::integrate_schedule(schedule));
  }
  bench.SetComplexityN(steps);
}
BENCHMARK(BM_IntegrateSchedule)
    ->RangeMultiplier(2)
    ->Range(500, 16000)
    ->Complexity(benchmark::oN);

void BM_GateFromSchedule(benchmark::State& bench) {
  const holoq::PulseSchedule schedule =
      holoq::PulseSchedule::lambda_pulse(0.9, 0.4);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(holoq::gate_from_schedule(schedule, 0));
  }
}
BENCHMARK(BM_GateFromSchedule);

}  // namespace

BENCHMARK_MAIN();
