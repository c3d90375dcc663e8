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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "holoq/analysis.hpp"
#include "holoq/config.hpp"
#include "holoq/errors.hpp"
#include "holoq/estimation.hpp"
#include "holoq/holonomy.hpp"
#include "holoq/noise.hpp"
#include "holoq/reports.hpp"
#include "holoq/state.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 numerical validation
// failure, 3 every branch leaked (rescaled estimate undefined).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAllLeaked = 3;

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw holoq::ConfigError("cannot open output file '" + out_path + "'");
  }
  out << payload << "\n";
}

struct RunArgs {
  std::string config_path;
  std::uint64_t trials = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  bool exact = false;
  std::string out;
  std::string dump_draws;
};

int run_command(const CLI::App& sub, const RunArgs& args) {
  holoq::ExperimentConfig cfg = holoq::load_config_file(args.config_path);
  if (sub.count("--trials") > 0) cfg.run.trials = args.trials;
  if (sub.count("--shots") > 0) cfg.run.shots = args.shots;
  if (sub.count("--seed") > 0) {
    cfg.run.seed = args.seed;
    cfg.run.seed_set = true;
  }
  if (sub.count("--threads") > 0) {
    if (args.threads < 1) {
      throw holoq::ConfigError("--threads must be at least 1");
    }
    cfg.run.threads = args.threads;
  }
  if (args.exact) {
    cfg.run.trials = 0;
    cfg.run.shots = 0;
  }
  if (sub.count("--out") > 0) cfg.run.out = args.out;
  if (sub.count("--dump-draws") > 0) cfg.run.dump_draws = args.dump_draws;
  // Freeze the seed precedence (CLI over run.seed over noise.seed) so the
  // echoed run.seed is the one actually used.
  cfg.run.seed = holoq::effective_seed(cfg);
  cfg.run.seed_set = true;

  const holoq::QutritState initial = holoq::build_initial_state(cfg);
  const holoq::Circuit circuit = holoq::build_circuit(cfg);
  const holoq::Observable observable = holoq::build_observable(cfg);
  const holoq::RunOptions options = holoq::build_run_options(cfg);

  const holoq::ExperimentOutcome outcome =
      holoq::run_experiment(initial, circuit, cfg.noise, observable, options);
  emit(holoq::results_json(outcome, cfg.run, cfg.noise), cfg.run.out);
  if (!cfg.run.dump_draws.empty()) {
    std::ofstream csv(cfg.run.dump_draws, std::ios::binary);
    if (!csv) {
      throw holoq::ConfigError("cannot open dump file '" + cfg.run.dump_draws +
                               "'");
    }
    csv << holoq::trial_csv(outcome.records);
  }
  return kExitOk;
}

int simulate_command(const CLI::App& sub, const std::string& config_path,
                     std::uint64_t trials, std::uint64_t seed, bool exact,
                     const std::string& out) {
  holoq::ExperimentConfig cfg = holoq::load_config_file(config_path);
  if (sub.count("--seed") > 0) {
    cfg.run.seed = seed;
    cfg.run.seed_set = true;
  }
  if (trials == 0) {
    throw holoq::ConfigError("--trials must be at least 1");
  }
  const holoq::QutritState initial = holoq::build_initial_state(cfg);
  const holoq::Circuit circuit = holoq::build_circuit(cfg);
  const holoq::DetectionReport report = holoq::simulate_detection(
      initial, circuit, cfg.noise, trials, holoq::effective_seed(cfg), exact);
  emit(holoq::detection_json(report), out.empty() ? cfg.run.out : out);
  return kExitOk;
}

int detect_prob_command(const std::string& config_path,
                        const std::string& state_string, int site_a,
                        int site_b, std::uint64_t trials, std::uint64_t seed,
                        const std::string& out) {
  holoq::QutritState state;
  if (!config_path.empty()) {
    const holoq::ExperimentConfig cfg = holoq::load_config_file(config_path);
    state = holoq::build_initial_state(cfg);
  } else {
    try {
      state = holoq::basis_state(state_string);
    } catch (const std::invalid_argument& e) {
      throw holoq::ConfigError(std::string("--state: ") + e.what());
    }
  }
  const holoq::DetectionReport report =
      trials == 0 ? holoq::closed_form_report(state, site_a, site_b)
                  : holoq::sampled_report(state, site_a, site_b, trials, seed);
  emit(holoq::detection_json(report), out);
  return kExitOk;
}

int validate_gate_command(double theta, double phi, double area, int steps,
                          const std::string& out) {
  if (steps < 1) {
    throw holoq::ConfigError("--steps must be at least 1");
  }
  const holoq::PulseSchedule schedule =
      holoq::PulseSchedule::lambda_pulse(theta, phi, area, steps);
  const holoq::HolonomyReport report = holoq::integrate_schedule(schedule);
  emit(holoq::holonomy_json(report), out);
  if (report.cyclicity_defect > holoq::kHolonomyDefectTol ||
      report.parallel_transport_residual > holoq::kHolonomyDefectTol) {
    std::cerr << "holonomy defects exceed " << holoq::kHolonomyDefectTol
              << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qutrit simulator for holonomic gates with leakage-rescaled "
      "observable estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "holoq 0.1.0");

  CLI::App* enumerate =
      app.add_subcommand("enumerate-errors",
                         "List the 81 two-site error labels and their "
                         "subset census");
  std::string enumerate_out;
  enumerate->add_option("--out", enumerate_out, "Write JSON here (default stdout)");

  CLI::App* detect = app.add_subcommand(
      "detect-prob",
      "Leakage detection probabilities per error label (closed form, or "
      "Monte Carlo with --trials)");
  std::string detect_config;
  std::string detect_state = "00";
  int detect_site_a = 0;
  int detect_site_b = 1;
  std::uint64_t detect_trials = 0;
  std::uint64_t detect_seed = 0;
  std::string detect_out;
  detect->add_option("--config", detect_config,
                     "Take the register and initial state from this config");
  detect->add_option("--state", detect_state,
                     "Trit string for the initial state (default 00)");
  detect->add_option("--site-a", detect_site_a, "First site of the pair");
  detect->add_option("--site-b", detect_site_b, "Second site of the pair");
  detect->add_option("--trials", detect_trials,
                     "Monte Carlo trials; 0 uses the closed form");
  detect->add_option("--seed", detect_seed, "Monte Carlo seed");
  detect->add_option("--out", detect_out, "Write JSON here (default stdout)");

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "Monte Carlo detection: draw faults, run the noisy circuit, score "
      "leakage of the final state");
  std::string simulate_config;
  std::uint64_t simulate_trials = 100000;
  std::uint64_t simulate_seed = 0;
  bool simulate_exact = false;
  std::string simulate_out;
  simulate->add_option("--config", simulate_config, "Experiment config JSON")
      ->required();
  simulate->add_option("--trials", simulate_trials,
                       "Monte Carlo trials (default 100000)");
  simulate->add_option("--seed", simulate_seed,
                       "Master seed (overrides the config)");
  simulate->add_flag("--exact", simulate_exact,
                     "Accumulate analytic leaked mass per trial instead of "
                     "sampling one outcome");
  simulate->add_option("--out", simulate_out,
                       "Write JSON here (default stdout)");

  CLI::App* run = app.add_subcommand(
      "run", "Single-fault noise ensemble with both estimators");
  RunArgs run_args;
  run->add_option("--config", run_args.config_path, "Experiment config JSON")
      ->required();
  run->add_option("--trials", run_args.trials,
                  "Sampled ensemble size; 0 enumerates every branch exactly");
  run->add_option("--shots", run_args.shots,
                  "Measurement shots per branch; 0 uses exact distributions");
  run->add_option("--seed", run_args.seed, "Master seed");
  run->add_option("--threads", run_args.threads, "Worker threads");
  run->add_flag("--exact", run_args.exact,
                "Force the exact ensemble (trials = 0, shots = 0)");
  run->add_option("--out", run_args.out, "Write JSON here (default stdout)");
  run->add_option("--dump-draws", run_args.dump_draws,
                  "Write one CSV row per ensemble branch");

  CLI::App* validate = app.add_subcommand(
      "validate-gate", "Integrate one pulse schedule and report its defects");
  double vg_theta = 0.0;
  double vg_phi = 0.0;
  double vg_area = holoq::PulseSchedule::kPiArea;
  int vg_steps = holoq::kDefaultPulseSteps;
  std::string vg_out;
  validate->add_option("--theta", vg_theta, "Mixing angle")->required();
  validate->add_option("--phi", vg_phi, "Relative phase");
  validate->add_option("--area", vg_area, "Pulse area (default pi)");
  validate->add_option("--steps", vg_steps, "Integrator steps");
  validate->add_option("--out", vg_out, "Write JSON here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (enumerate->parsed()) {
      emit(holoq::enumeration_json(), enumerate_out);
      return kExitOk;
    }
    if (detect->parsed()) {
      return detect_prob_command(detect_config, detect_state, detect_site_a,
                                 detect_site_b, detect_trials, detect_seed,
                                 detect_out);
    }
    if (simulate->parsed()) {
      return simulate_command(*simulate, simulate_config, simulate_trials,
                              simulate_seed, simulate_exact, simulate_out);
    }
    if (run->parsed()) {
      return run_command(*run, run_args);
    }
    if (validate->parsed()) {
      return validate_gate_command(vg_theta, vg_phi, vg_area, vg_steps,
                                   vg_out);
    }
  } catch (const holoq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const holoq::AllLeakedError& e) {
    std::cerr << "all branches leaked: " << e.what() << "\n";
    return kExitAllLeaked;
  } catch (const holoq::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
