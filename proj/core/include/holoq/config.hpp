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

#ifndef HOLOQ_CONFIG_HPP_
#define HOLOQ_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "holoq/analysis.hpp"
#include "holoq/estimation.hpp"
#include "holoq/noise.hpp"

namespace holoq {

// Dense spectral data scales as 9^n; configs beyond this site count are
// rejected up front instead of exhausting memory.
inline constexpr int kMaxConfigSites = 6;

struct GateSpec {
  enum class Kind { Schedule, Logical };
  Kind kind = Kind::Logical;
  // Schedule gates.
  double theta = 0.0;
  double phi = 0.0;
  double area = PulseSchedule::kPiArea;
  int steps = kDefaultPulseSteps;
  // Logical gates: a preset name, or an explicit 2^k x 2^k matrix.
  std::string name;
  Matrix matrix;
  std::vector<int> sites;
};

struct ObservableSpec {
  enum class Kind { PauliString, LogicalMatrix };
  Kind kind = Kind::PauliString;
  std::string pauli;  // one of I, X, Y, Z per site
  Matrix matrix;      // Hermitian, 2^n x 2^n
};

struct RunSpec {
  std::uint64_t trials = 0;  // 0: exhaustive exact ensemble
  std::uint64_t shots = 0;   // 0: exact outcome distributions
  std::uint64_t seed = 0;
  bool seed_set = false;  // run.seed given explicitly; else noise.seed applies
  int threads = 1;
  std::string out;         // result path; empty writes to stdout
  std::string dump_draws;  // per-branch CSV path; empty skips the dump
};

struct ExperimentConfig {
  int num_sites = 1;
  // Exactly one of the two initial-state forms is populated: a trit string
  // (one character per site) or 2^n logical amplitudes.
  std::string initial;
  std::vector<Complex> initial_amplitudes;
  std::vector<GateSpec> gates;
  NoiseSpec noise;
  ObservableSpec observable;
  RunSpec run;
};

// Slack on the norm of a configured logical amplitude list; the list is
// renormalized after the check.
inline constexpr double kInitialNormTol = 1e-6;

// Leaked mass allowed in the configured initial state.
inline constexpr double kInitialLeakTol = 1e-12;

// Both throw ConfigError with the offending field path in the message.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Materializes the configured initial state and enforces that it resides in
// the logical block (leaked mass at most kInitialLeakTol).
QutritState build_initial_state(const ExperimentConfig& config);

// Master seed with precedence run.seed (when given) over noise.seed. CLI
// level --seed overrides both before this is consulted.
std::uint64_t effective_seed(const ExperimentConfig& config);

// Materializes every gate: schedules are integrated and audited, logical
// specs embedded. Schedule convergence or holonomy failures surface as
// ValidationError; everything decidable from the config alone is a
// ConfigError.
Circuit build_circuit(const ExperimentConfig& config);

Observable build_observable(const ExperimentConfig& config);

RunOptions build_run_options(const ExperimentConfig& config);

}  // namespace holoq

#endif  // HOLOQ_CONFIG_HPP_
