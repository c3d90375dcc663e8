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

#include "holoq/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "holoq/errors.hpp"

namespace holoq {

namespace {

void check_pair(const QutritState& state, int site_a, int site_b) {
  if (site_a < 0 || site_a >= state.num_sites || site_b < 0 ||
      site_b >= state.num_sites || site_a == site_b) {
    throw std::invalid_argument("pair sites must be distinct and in range");
  }
}

// Does trit value t on a logical state stay logical under X^x.
bool survives_shift(int t, int x) { return (t + x) % 3 != 2; }

// Standard error of the mean of `count` samples with the given first two
// power sums.
double standard_error(double sum, double sum_sq, std::uint64_t count) {
  if (count < 2) {
    return 0.0;
  }
  const auto n = static_cast<double>(count);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  return std::sqrt(variance / n);
}

}  // namespace

PairMasses decompose_on_pair(const QutritState& state, int site_a,
                             int site_b) {
  check_pair(state, site_a, site_b);
  double masses[3][3] = {};
  for (Eigen::Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    const double mass = std::norm(state.amplitudes(idx));
    masses[trit_at(i, site_a, state.num_sites)]
          [trit_at(i, site_b, state.num_sites)] += mass;
  }
  double outside = 0.0;
  for (int t = 0; t < 3; ++t) {
    outside += masses[2][t] + masses[t][2];
  }
  if (outside > kStateTol) {
    std::ostringstream msg;
    msg << "pair decomposition expects a logical state; mass " << outside
        << " sits on trit 2";
    throw ValidationError(msg.str());
  }
  return PairMasses{masses[0][0], masses[0][1], masses[1][0], masses[1][1]};
}

double closed_form_detection(const PairMasses& masses,
                             const PauliLabel& label) {
  const double table[2][2] = {{masses.m00, masses.m01},
                              {masses.m10, masses.m11}};
  double survival = 0.0;
  for (int ta = 0; ta < 2; ++ta) {
    for (int tb = 0; tb < 2; ++tb) {
      if (survives_shift(ta, label.xa) && survives_shift(tb, label.xb)) {
        survival += table[ta][tb];
      }
    }
  }
  return 1.0 - survival;
}

SubsetSums subset_sums(const std::array<double, kLabelCount>& per_label) {
  SubsetSums sums;
  for (int i = 0; i < kLabelCount; ++i) {
    const double p = per_label[static_cast<std::size_t>(i)];
    switch (classify_label(label_from_index(i))) {
      case ErrorSubset::S1:
        sums.s1 += p;
        break;
      case ErrorSubset::S2:
        sums.s2 += p;
        break;
      case ErrorSubset::S3:
        sums.s3 += p;
        break;
      case ErrorSubset::S4:
        sums.s4 += p;
        break;
      case ErrorSubset::Identity:
        break;
    }
  }
  return sums;
}

DetectionReport subset_sums(const PairMasses& masses) {
  DetectionReport report;
  for (int i = 0; i < kLabelCount; ++i) {
    const PauliLabel label = label_from_index(i);
    report.per_label[static_cast<std::size_t>(i)] =
        label.is_identity() ? 0.0 : closed_form_detection(masses, label);
  }
  report.sums = subset_sums(report.per_label);
  report.aggregate = report.sums.aggregate();
  report.method = "closed-form";
  return report;
}

DetectionReport closed_form_report(const QutritState& state, int site_a,
                                   int site_b) {
  return subset_sums(decompose_on_pair(state, site_a, site_b));
}

namespace {

// Shared tally for the simulated detection reports. leak_mass accumulates
// detection weight per label (counts in shot mode, analytic leaked mass in
// exact mode); draw_mass accumulates how much of the ensemble drew the
// label. Scaling the subset sums by kErrorLabelCount / total_mass keeps
// aggregate == sums.aggregate() an exact identity; under the uniform error
// model the sums estimate the plain per-subset totals of the conditionals.
struct DetectionTally {
  std::array<double, kLabelCount> leak_mass{};
  std::array<double, kLabelCount> draw_mass{};
  double total_mass = 0.0;

  DetectionReport report(std::string method, std::uint64_t trials,
                         double sigma) const {
    DetectionReport out;
    std::array<double, kLabelCount> scaled{};
    double leaked_total = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(kLabelCount); ++i) {
      out.per_label[i] =
          draw_mass[i] <= 0.0 ? 0.0 : leak_mass[i] / draw_mass[i];
      if (total_mass > 0.0) {
        scaled[i] = kErrorLabelCount * leak_mass[i] / total_mass;
      }
      leaked_total += leak_mass[i];
    }
    out.sums = subset_sums(scaled);
    out.aggregate = total_mass > 0.0 ? leaked_total / total_mass : 0.0;
    out.method = std::move(method);
    out.trials = trials;
    out.aggregate_sigma = sigma;
    return out;
  }
};

}  // namespace

DetectionReport sampled_report(const QutritState& state, int site_a,
                               int site_b, std::uint64_t trials,
                               std::uint64_t seed) {
  check_pair(state, site_a, site_b);
  if (trials == 0) {
    throw std::invalid_argument("sampled detection needs trials > 0");
  }
  DetectionTally tally;
  double detected_total = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Substream rng(seed, t);
    // Uniform over the 80 error labels; identity sits at index 0.
    auto pick = static_cast<std::size_t>(rng.next_double() * kErrorLabelCount);
    pick = std::min<std::size_t>(pick, kErrorLabelCount - 1);
    const std::size_t label_slot = pick + 1;
    const PauliLabel label = label_from_index(static_cast<int>(label_slot));

    const QutritState hit =
        apply_two_site(state, build_error_operator(label), site_a, site_b);
    const double survival = project_logical(hit).retained;
    const bool detected = rng.next_double() < 1.0 - survival;

    tally.draw_mass[label_slot] += 1.0;
    if (detected) {
      tally.leak_mass[label_slot] += 1.0;
      detected_total += 1.0;
    }
  }
  tally.total_mass = static_cast<double>(trials);
  // Bernoulli scores: the squared sum equals the sum.
  const double sigma = standard_error(detected_total, detected_total, trials);
  return tally.report("simulated", trials, sigma);
}

DetectionReport simulate_detection(const QutritState& initial,
                                   const Circuit& circuit,
                                   const NoiseSpec& noise,
                                   std::uint64_t trials, std::uint64_t seed,
                                   bool exact_mode) {
  if (trials == 0) {
    throw std::invalid_argument("detection simulation needs trials > 0");
  }
  if (noise.mode != NoiseMode::None) {
    location_distribution(noise, circuit);  // fail fast on impossible specs
  }
  DetectionTally tally;
  double leak_sum = 0.0;
  double leak_sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Substream rng(seed, t);
    const std::optional<NoiseDraw> draw = sample_noise(noise, circuit, rng);
    const QutritState final_state = apply_noisy_circuit(initial, circuit, draw);
    const double leaked = leak_probability(final_state);
    const double score =
        exact_mode ? leaked : (rng.next_double() < leaked ? 1.0 : 0.0);
    leak_sum += score;
    leak_sum_sq += score * score;
    if (draw.has_value()) {
      const auto slot = static_cast<std::size_t>(label_index(draw->label));
      tally.draw_mass[slot] += 1.0;
      tally.leak_mass[slot] += score;
    }
  }
  tally.total_mass = static_cast<double>(trials);
  return tally.report("simulated", trials,
                      standard_error(leak_sum, leak_sum_sq, trials));
}

namespace {

struct Branch {
  std::int64_t gate_index = -1;  // -1: noiseless
  PauliLabel label;
  double weight = 0.0;
};

std::vector<Branch> exact_branches(const NoiseSpec& noise,
                                   const Circuit& circuit) {
  if (noise.mode == NoiseMode::None) {
    return {Branch{-1, PauliLabel{0, 0, 0, 0}, 1.0}};
  }
  const LocationDistribution locations = location_distribution(noise, circuit);
  const std::array<double, kLabelCount> probs = error_distribution(noise);
  std::vector<Branch> branches;
  branches.reserve(locations.gate_indices.size() * kErrorLabelCount);
  for (std::size_t g = 0; g < locations.gate_indices.size(); ++g) {
    const double location_prob = locations.probabilities[g];
    if (location_prob <= 0.0) {
      continue;
    }
    for (int i = 0; i < kLabelCount; ++i) {
      const double p = probs[static_cast<std::size_t>(i)];
      if (p <= 0.0) {
        continue;
      }
      branches.push_back(
          Branch{static_cast<std::int64_t>(locations.gate_indices[g]),
                 label_from_index(i), location_prob * p});
    }
  }
  return branches;
}

}  // namespace

ExperimentOutcome run_experiment(const QutritState& initial,
                                 const Circuit& circuit,
                                 const NoiseSpec& noise,
                                 const Observable& observable,
                                 const RunOptions& options) {
  if (initial.num_sites != observable.num_sites) {
    throw ValidationError(
        "experiment: state and observable site counts differ");
  }
  const bool exact_ensemble = options.trials == 0;

  ExperimentOutcome outcome;
  outcome.exact = exact_ensemble;
  outcome.e_ideal = expectation(apply_circuit(initial, circuit), observable);

  std::vector<Branch> branches;
  if (exact_ensemble) {
    branches = exact_branches(noise, circuit);
  } else {
    if (noise.mode != NoiseMode::None) {
      location_distribution(noise, circuit);  // fail fast on impossible specs
    }
    branches.resize(options.trials);  // drawn per trial below
  }
  const std::size_t count = branches.size();
  std::vector<TrialRecord> records(count);

  auto evaluate = [&](std::size_t index) {
    Substream rng(options.seed, index);
    TrialRecord rec;
    rec.trial = index;

    std::optional<NoiseDraw> draw;
    if (exact_ensemble) {
      const Branch& b = branches[index];
      rec.gate_index = b.gate_index;
      rec.label = b.label;
      rec.weight = b.weight;
      if (b.gate_index >= 0) {
        draw = NoiseDraw{static_cast<std::size_t>(b.gate_index), b.label};
      }
    } else {
      draw = sample_noise(noise, circuit, rng);
      rec.weight = 1.0 / static_cast<double>(count);
      if (draw.has_value()) {
        rec.gate_index = static_cast<std::int64_t>(draw->gate_index);
        rec.label = draw->label;
      }
    }

    const QutritState final_state = apply_noisy_circuit(initial, circuit, draw);
    OutcomeDistribution dist = exact_distribution(final_state, observable);
    if (options.shots > 0) {
      dist = sample_distribution(dist, options.shots, rng);
    }
    rec.e_conventional = estimate_conventional(dist, observable);
    rec.retained = retained_mass(dist, observable);
    try {
      rec.e_rescaled = estimate_rescaled(dist, observable);
    } catch (const AllLeakedError&) {
      rec.e_rescaled = std::nullopt;
    }
    records[index] = std::move(rec);
  };

  const int threads = std::max(
      1, std::min(options.threads,
                  static_cast<int>(std::min<std::size_t>(count, 1 << 10))));
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      evaluate(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        try {
          evaluate(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
  }

  // Fixed-order aggregation: identical for every thread count.
  double included_weight = 0.0;
  double mean_rescaled = 0.0;
  double mean_abs_err_rescaled = 0.0;
  DetectionTally tally;
  double leak_sum = 0.0;
  double leak_sum_sq = 0.0;
  for (const TrialRecord& rec : records) {
    outcome.mean_conventional += rec.weight * rec.e_conventional;
    outcome.mean_abs_err_conventional +=
        rec.weight * std::abs(rec.e_conventional - outcome.e_ideal);
    outcome.mean_retained += rec.weight * rec.retained;
    const double leaked = 1.0 - rec.retained;
    leak_sum += leaked;
    leak_sum_sq += leaked * leaked;
    if (rec.gate_index >= 0) {
      const auto slot = static_cast<std::size_t>(label_index(rec.label));
      tally.draw_mass[slot] += rec.weight;
      tally.leak_mass[slot] += rec.weight * leaked;
    }
    tally.total_mass += rec.weight;
    if (rec.e_rescaled.has_value()) {
      included_weight += rec.weight;
      mean_rescaled += rec.weight * *rec.e_rescaled;
      mean_abs_err_rescaled +=
          rec.weight * std::abs(*rec.e_rescaled - outcome.e_ideal);
    } else {
      outcome.excluded_trials += 1;
    }
  }
  outcome.total_trials = count;
  if (included_weight <= 0.0) {
    throw AllLeakedError(
        "every ensemble branch leaked completely; rescaled averages are "
        "undefined");
  }
  outcome.mean_rescaled = mean_rescaled / included_weight;
  outcome.mean_abs_err_rescaled = mean_abs_err_rescaled / included_weight;
  outcome.detection = tally.report(
      "simulated", count,
      exact_ensemble ? 0.0 : standard_error(leak_sum, leak_sum_sq, count));
  outcome.records = std::move(records);
  if (!options.keep_records) {
    outcome.records.clear();
    outcome.records.shrink_to_fit();
  }
  return outcome;
}

}  // namespace holoq
