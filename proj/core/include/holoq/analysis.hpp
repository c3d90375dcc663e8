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

#ifndef HOLOQ_ANALYSIS_HPP_
#define HOLOQ_ANALYSIS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoq/algebra.hpp"
#include "holoq/estimation.hpp"
#include "holoq/noise.hpp"
#include "holoq/state.hpp"

namespace holoq {

// Joint trit-pair populations of a logical state on two sites; mass on
// trit value 2 is zero for logical states, so these four entries sum to 1.
struct PairMasses {
  double m00 = 0.0;
  double m01 = 0.0;
  double m10 = 0.0;
  double m11 = 0.0;
};

PairMasses decompose_on_pair(const QutritState& state, int site_a, int site_b);

// Probability that the error labelled (xa, za, xb, zb), applied on the pair,
// moves a logical state with the given populations out of the logical block.
// Depends only on the X exponents.
double closed_form_detection(const PairMasses& masses, const PauliLabel& label);

struct SubsetSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;

  double aggregate() const { return (s1 + s2 + s3 + s4) / kErrorLabelCount; }
};

// Detection probabilities keyed by error label. per_label holds conditional
// detection probabilities (given that label struck). sums holds per-subset
// totals scaled so that aggregate == sums.aggregate() exactly: under the
// uniform error model they reduce to plain sums of the conditionals.
struct DetectionReport {
  std::array<double, kLabelCount> per_label{};
  SubsetSums sums;
  double aggregate = 0.0;        // probability an error event is detected
  std::string method;            // "closed-form" or "simulated"
  std::uint64_t trials = 0;      // 0 when no sampling was involved
  double aggregate_sigma = 0.0;  // standard error; 0 when exact
};

SubsetSums subset_sums(const std::array<double, kLabelCount>& per_label);

// Closed-form report for the uniform error model: per-label conditionals
// from closed_form_detection, per-subset sums 27 / 9 / 9 / 0 and aggregate
// 45/80 for every normalized decomposition.
DetectionReport subset_sums(const PairMasses& masses);

DetectionReport closed_form_report(const QutritState& state, int site_a,
                                   int site_b);

// Independent route for one state and one pair: per trial, draw an error
// label uniformly, apply its operator and Bernoulli-sample leakage from the
// post-error logical mass. Per-label tallies give the detection estimates.
DetectionReport sampled_report(const QutritState& state, int site_a,
                               int site_b, std::uint64_t trials,
                               std::uint64_t seed);

// Circuit-level Monte Carlo detection: per trial, draw (gate, label) from
// the noise spec, run the noisy circuit and score leakage of the final
// state. exact_mode accumulates the analytic leaked mass per trial; shot
// mode Bernoulli-samples one measured outcome per trial. Noise mode none
// reports aggregate 0.
DetectionReport simulate_detection(const QutritState& initial,
                                   const Circuit& circuit,
                                   const NoiseSpec& noise,
                                   std::uint64_t trials, std::uint64_t seed,
                                   bool exact_mode = true);

// One member of the noise ensemble: which branch ran, how it was weighted,
// and what both estimators returned. e_rescaled is empty when the branch
// leaked completely (excluded from rescaled averages).
struct TrialRecord {
  std::uint64_t trial = 0;
  std::int64_t gate_index = -1;  // -1 for the noiseless branch
  PauliLabel label;              // identity for the noiseless branch
  double weight = 0.0;
  double retained = 0.0;
  double e_conventional = 0.0;
  std::optional<double> e_rescaled;
};

struct ExperimentOutcome {
  double e_ideal = 0.0;
  double mean_conventional = 0.0;
  double mean_rescaled = 0.0;  // over included branches only
  double mean_abs_err_conventional = 0.0;
  double mean_abs_err_rescaled = 0.0;
  double mean_retained = 0.0;
  std::uint64_t total_trials = 0;
  std::uint64_t excluded_trials = 0;
  bool exact = false;
  DetectionReport detection;  // leakage scoring of the same ensemble
  std::vector<TrialRecord> records;
};

struct RunOptions {
  std::uint64_t trials = 0;  // 0: exhaustive ensemble (every gate x label)
  std::uint64_t shots = 0;   // 0: exact outcome distributions
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_records = true;
};

// Runs the single-fault ensemble and aggregates both estimators against the
// noiseless reference. trials == 0 enumerates every (faulty gate, error
// label) branch with its exact probability weight; trials > 0 samples the
// ensemble, one substream per trial. Aggregation order is fixed by branch
// index, so results are identical for any thread count.
ExperimentOutcome run_experiment(const QutritState& initial,
                                 const Circuit& circuit,
                                 const NoiseSpec& noise,
                                 const Observable& observable,
                                 const RunOptions& options);

}  // namespace holoq

#endif  // HOLOQ_ANALYSIS_HPP_
