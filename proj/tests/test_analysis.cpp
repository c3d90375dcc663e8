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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "holoq/analysis.hpp"
#include "holoq/errors.hpp"
#include "holoq/reports.hpp"
#include "test_support.hpp"

namespace holoq {
namespace {

HolonomicGate controlled_flip(int a, int b) {
  Matrix cnot = Matrix::Identity(4, 4);
  cnot(2, 2) = 0;
  cnot(3, 3) = 0;
  cnot(2, 3) = 1;
  cnot(3, 2) = 1;
  const std::array<int, 2> sites{a, b};
  return embed_logical_unitary(cnot, sites);
}

HolonomicGate two_site_identity(int a, int b) {
  const std::array<int, 2> sites{a, b};
  return embed_logical_unitary(Matrix::Identity(4, 4), sites);
}

HolonomicGate random_logical_gate(int site, std::mt19937_64& gen) {
  const std::array<int, 1> sites{site};
  return embed_logical_unitary(test::random_unitary(2, gen), sites);
}

Matrix sigma_zz() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return kron(z, z);
}

TEST_CASE("decompose_on_pair groups populations by the trit pair") {
  SUBCASE("basis state") {
    const PairMasses m = decompose_on_pair(basis_state("010"), 0, 2);
    CHECK(m.m00 == doctest::Approx(1.0));
    CHECK(m.m01 + m.m10 + m.m11 == doctest::Approx(0.0));
    const PairMasses swapped = decompose_on_pair(basis_state("010"), 1, 2);
    CHECK(swapped.m10 == doctest::Approx(1.0));
  }
  SUBCASE("maximally correlated pair") {
    Vector amps(4);
    amps << 1.0 / std::numbers::sqrt2, 0.0, 0.0, 1.0 / std::numbers::sqrt2;
    const QutritState bell = embed_logical_amplitudes(2, amps);
    const PairMasses m = decompose_on_pair(bell, 0, 1);
    CHECK(m.m00 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.m11 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.m01 == doctest::Approx(0.0));
    CHECK(m.m10 == doctest::Approx(0.0));
  }
  SUBCASE("matches a brute-force regroup on four sites") {
    std::mt19937_64 gen(201);
    const QutritState state = test::random_logical_state(4, gen);
    const int site_a = 1;
    const int site_b = 3;
    double table[2][2] = {};
    for (Eigen::Index idx = 0; idx < state.amplitudes.size(); ++idx) {
      const auto i = static_cast<std::size_t>(idx);
      const int ta = trit_at(i, site_a, 4);
      const int tb = trit_at(i, site_b, 4);
      if (ta < 2 && tb < 2) {
        table[ta][tb] += std::norm(state.amplitudes(idx));
      }
    }
    const PairMasses m = decompose_on_pair(state, site_a, site_b);
    CHECK(m.m00 == doctest::Approx(table[0][0]).epsilon(1e-12));
    CHECK(m.m01 == doctest::Approx(table[0][1]).epsilon(1e-12));
    CHECK(m.m10 == doctest::Approx(table[1][0]).epsilon(1e-12));
    CHECK(m.m11 == doctest::Approx(table[1][1]).epsilon(1e-12));
    CHECK(m.m00 + m.m01 + m.m10 + m.m11 ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("rejects bad pairs and leaked states") {
    CHECK_THROWS_AS(decompose_on_pair(basis_state("00"), 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(decompose_on_pair(basis_state("00"), 0, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(decompose_on_pair(basis_state("02"), 0, 1),
                    ValidationError);
  }
}

TEST_CASE("closed_form_detection reproduces the population case table") {
  const PairMasses m{0.1, 0.2, 0.3, 0.4};
  struct Row {
    int xa;
    int xb;
    double expected;
  };
  const std::vector<Row> rows = {
      {1, 1, 1.0 - 0.1}, {1, 2, 1.0 - 0.2}, {2, 1, 1.0 - 0.3},
      {2, 2, 1.0 - 0.4}, {1, 0, 0.3 + 0.4}, {2, 0, 0.1 + 0.2},
      {0, 1, 0.2 + 0.4}, {0, 2, 0.1 + 0.3}, {0, 0, 0.0},
  };
  for (const Row& row : rows) {
    CAPTURE(row.xa);
    CAPTURE(row.xb);
    // Clock exponents never matter: populations are phase blind.
    for (int za = 0; za < 3; ++za) {
      for (int zb = 0; zb < 3; ++zb) {
        const double p =
            closed_form_detection(m, PauliLabel{row.xa, za, row.xb, zb});
        CHECK(p == doctest::Approx(row.expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("closed form agrees with brute-force leakage for all 81 labels") {
  std::mt19937_64 gen(202);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 3);
    const QutritState state = test::random_logical_state(n, gen);
    const int site_a = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    int site_b = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    if (site_b == site_a) site_b = (site_b + 1) % n;
    const PairMasses masses = decompose_on_pair(state, site_a, site_b);
    for (int i = 0; i < kLabelCount; ++i) {
      const PauliLabel label = label_from_index(i);
      const QutritState hit = apply_two_site(
          state, build_error_operator(label), site_a, site_b);
      const double brute = leak_probability(hit);
      CAPTURE(rep);
      CAPTURE(i);
      CHECK(std::abs(closed_form_detection(masses, label) - brute) < 1e-10);
    }
  }
}

TEST_CASE("subset_sums on a raw per-label array routes by subset") {
  std::array<double, kLabelCount> per_label{};
  per_label[static_cast<std::size_t>(label_index(PauliLabel{1, 0, 0, 0}))] =
      1.0;  // an S2 label
  per_label[static_cast<std::size_t>(label_index(PauliLabel{0, 1, 0, 1}))] =
      0.5;  // an S4 label
  const SubsetSums sums = subset_sums(per_label);
  CHECK(sums.s1 == 0.0);
  CHECK(sums.s2 == 1.0);
  CHECK(sums.s3 == 0.0);
  CHECK(sums.s4 == 0.5);
  CHECK(sums.aggregate() == doctest::Approx(1.5 / 80.0).epsilon(1e-15));
}

TEST_CASE("closed-form report: 27 / 9 / 9 / 0 and 45/80 for any state") {
  std::mt19937_64 gen(203);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 4);  // up to 5 sites
    const QutritState state = test::random_logical_state(n, gen);
    const int site_a = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    int site_b = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    if (site_b == site_a) site_b = (site_b + 1) % n;

    const DetectionReport report = closed_form_report(state, site_a, site_b);
    CAPTURE(n);
    CHECK(std::abs(report.sums.s1 - 27.0) < 1e-10);
    CHECK(std::abs(report.sums.s2 - 9.0) < 1e-10);
    CHECK(std::abs(report.sums.s3 - 9.0) < 1e-10);
    CHECK(std::abs(report.sums.s4 - 0.0) < 1e-10);
    CHECK(std::abs(report.aggregate - 0.5625) < 1e-12);
    CHECK(report.aggregate == report.sums.aggregate());
    CHECK(report.method == "closed-form");
    CHECK(report.trials == 0);
    CHECK(report.aggregate_sigma == 0.0);
    CHECK(report.per_label[0] == 0.0);

    const PairMasses masses = decompose_on_pair(state, site_a, site_b);
    const DetectionReport direct = subset_sums(masses);
    for (int i = 0; i < kLabelCount; ++i) {
      CHECK(report.per_label[static_cast<std::size_t>(i)] ==
            direct.per_label[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("sampled_report converges on the closed form and is reproducible") {
  const QutritState state = basis_state("00");
  constexpr std::uint64_t kTrials = 20000;
  const DetectionReport a = sampled_report(state, 0, 1, kTrials, 12345);
  const DetectionReport b = sampled_report(state, 0, 1, kTrials, 12345);
  CHECK(a.method == "simulated");
  CHECK(a.trials == kTrials);
  CHECK(a.aggregate_sigma > 0.0);
  for (int i = 0; i < kLabelCount; ++i) {
    CHECK(a.per_label[static_cast<std::size_t>(i)] ==
          b.per_label[static_cast<std::size_t>(i)]);
  }
  CHECK(a.aggregate == b.aggregate);

  // Bernoulli std at p = 0.5625 over 2e4 trials is 3.5e-3.
  CHECK(std::abs(a.aggregate - 0.5625) < 0.011);
  CHECK(std::abs(a.aggregate - 0.5625) < 3.5 * a.aggregate_sigma + 1e-9);
  CHECK(a.aggregate == doctest::Approx(a.sums.aggregate()).epsilon(1e-12));

  const DetectionReport other = sampled_report(state, 0, 1, kTrials, 999);
  CHECK(other.aggregate != a.aggregate);

  CHECK_THROWS_AS(sampled_report(state, 0, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sampled_report(state, 0, 0, 10, 1), std::invalid_argument);
}

TEST_CASE("simulate_detection scores circuit-level leakage") {
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  const QutritState initial = basis_state("00");
  NoiseSpec spec;

  SUBCASE("exact scoring matches the closed-form aggregate") {
    const DetectionReport report =
        simulate_detection(initial, circuit, spec, 20000, 31, true);
    CHECK(report.method == "simulated");
    CHECK(std::abs(report.aggregate - 0.5625) < 0.011);
    CHECK(report.aggregate ==
          doctest::Approx(report.sums.aggregate()).epsilon(1e-12));
  }
  SUBCASE("shot scoring agrees within its error bar") {
    const DetectionReport report =
        simulate_detection(initial, circuit, spec, 20000, 32, false);
    CHECK(std::abs(report.aggregate - 0.5625) < 0.011);
    CHECK(report.aggregate_sigma > 0.0);
  }
  SUBCASE("noise off reports zero") {
    spec.mode = NoiseMode::None;
    const DetectionReport report =
        simulate_detection(initial, circuit, spec, 50, 33, true);
    CHECK(report.aggregate == 0.0);
    CHECK(report.sums.aggregate() == 0.0);
  }
  SUBCASE("pure-shift noise is detected more often than symmetric noise") {
    spec.mode = NoiseMode::Asymmetric;
    spec.x_weight = 1.0;
    spec.z_weight = 0.0;
    const DetectionReport report =
        simulate_detection(initial, circuit, spec, 10000, 34, true);
    // Exact value 5/8; 10 sigma at 1e4 trials is 0.049.
    CHECK(std::abs(report.aggregate - 0.625) < 0.02);
    CHECK(report.aggregate > 0.5625);
  }
  SUBCASE("clock-only noise is never detected") {
    spec.mode = NoiseMode::Asymmetric;
    spec.x_weight = 0.0;
    spec.z_weight = 1.0;
    const DetectionReport report =
        simulate_detection(initial, circuit, spec, 2000, 35, true);
    CHECK(report.aggregate <= 1e-12);
  }
  SUBCASE("zero trials or an impossible spec fail fast") {
    CHECK_THROWS_AS(simulate_detection(initial, circuit, spec, 0, 1, true),
                    std::invalid_argument);
    Circuit empty;
    CHECK_THROWS_AS(simulate_detection(initial, empty, spec, 10, 1, true),
                    ConfigError);
  }
}

TEST_CASE("gates after the error never change the leaked mass") {
  std::mt19937_64 gen(204);
  const QutritState initial = test::random_logical_state(2, gen);
  Circuit base;
  base.push_back(controlled_flip(0, 1));
  Circuit extended = base;
  extended.push_back(random_logical_gate(0, gen));
  extended.push_back(random_logical_gate(1, gen));
  extended.push_back(two_site_identity(0, 1));  // block preserving by design

  const QutritState pre_error = apply_circuit(initial, base);
  const PairMasses masses = decompose_on_pair(pre_error, 0, 1);

  for (int i = 1; i < kLabelCount; ++i) {
    NoiseDraw draw;
    draw.gate_index = 0;
    draw.label = label_from_index(i);
    const double leak_base =
        leak_probability(apply_noisy_circuit(initial, base, draw));
    const double leak_extended =
        leak_probability(apply_noisy_circuit(initial, extended, draw));
    CAPTURE(i);
    CHECK(std::abs(leak_base - leak_extended) < 1e-10);
    // Both equal the closed form evaluated on the pre-error state.
    CHECK(std::abs(leak_base -
                   closed_form_detection(masses, draw.label)) < 1e-10);
  }
}

// Exhaustive single-fault ensemble on a gate that does nothing: every
// aggregate has a hand-computable value.
TEST_CASE("exact ensemble on the identity fixture: frozen aggregates") {
  const QutritState initial = basis_state("00");
  Circuit circuit;
  circuit.push_back(two_site_identity(0, 1));
  NoiseSpec spec;
  const Observable obs = observable_from_logical(sigma_zz(), 2);
  RunOptions options;
  options.trials = 0;

  const ExperimentOutcome outcome =
      run_experiment(initial, circuit, spec, obs, options);

  CHECK(outcome.exact);
  CHECK(outcome.total_trials == 80);
  CHECK(outcome.records.size() == 80);
  CHECK(outcome.e_ideal == doctest::Approx(1.0).epsilon(1e-12));

  // Survivors: 8 clock-only branches keep +1, 18 single-shift branches flip
  // to -1, 9 double-shift branches keep +1; the remaining 45 leak entirely.
  CHECK(outcome.excluded_trials == 45);
  CHECK(outcome.mean_conventional ==
        doctest::Approx(-1.0 / 80.0).epsilon(1e-12));
  CHECK(outcome.mean_rescaled == doctest::Approx(-1.0 / 35.0).epsilon(1e-12));
  CHECK(outcome.mean_abs_err_conventional ==
        doctest::Approx(81.0 / 80.0).epsilon(1e-12));
  CHECK(outcome.mean_abs_err_rescaled ==
        doctest::Approx(36.0 / 35.0).epsilon(1e-12));
  CHECK(outcome.mean_retained == doctest::Approx(35.0 / 80.0).epsilon(1e-12));

  CHECK(outcome.detection.aggregate ==
        doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(std::abs(outcome.detection.sums.s1 - 27.0) < 1e-10);
  CHECK(std::abs(outcome.detection.sums.s2 - 9.0) < 1e-10);
  CHECK(std::abs(outcome.detection.sums.s3 - 9.0) < 1e-10);
  CHECK(std::abs(outcome.detection.sums.s4 - 0.0) < 1e-10);
  CHECK(outcome.detection.aggregate ==
        doctest::Approx(outcome.detection.sums.aggregate()).epsilon(1e-14));

  // Per-label detection on |00>: a unit shift keeps the state logical, a
  // double shift expels it.
  const auto label_slot = [](int xa, int za, int xb, int zb) {
    return static_cast<std::size_t>(label_index(PauliLabel{xa, za, xb, zb}));
  };
  CHECK(outcome.detection.per_label[label_slot(1, 0, 1, 0)] ==
        doctest::Approx(0.0));
  CHECK(outcome.detection.per_label[label_slot(2, 0, 0, 0)] ==
        doctest::Approx(1.0));
  CHECK(outcome.detection.per_label[label_slot(0, 1, 0, 2)] ==
        doctest::Approx(0.0));

  for (const TrialRecord& rec : outcome.records) {
    CHECK(rec.weight == doctest::Approx(1.0 / 80.0).epsilon(1e-15));
    CHECK(rec.gate_index == 0);
    CHECK_FALSE(rec.label.is_identity());
  }

  // CSV dump: header plus one line per branch; excluded rows carry an empty
  // rescaled column and the trailing flag.
  const std::string csv = trial_csv(outcome.records);
  std::istringstream lines(csv);
  std::string line;
  int line_count = 0;
  int excluded_count = 0;
  while (std::getline(lines, line)) {
    if (line_count == 0) {
      CHECK(line ==
            "trial,gate_index,xa,za,xb,zb,subset,weight,retained,"
            "e_conventional,e_rescaled,excluded");
    } else if (line.ends_with(",1")) {
      ++excluded_count;
      CHECK(line.find(",,1") != std::string::npos);
    }
    ++line_count;
  }
  CHECK(line_count == 81);
  CHECK(excluded_count == 45);
}

TEST_CASE("noise off: both estimators equal the ideal value") {
  std::mt19937_64 gen(205);
  const QutritState initial = test::random_logical_state(2, gen);
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  circuit.push_back(random_logical_gate(0, gen));
  NoiseSpec spec;
  spec.mode = NoiseMode::None;
  const Observable obs = observable_from_logical(sigma_zz(), 2);
  RunOptions options;

  const ExperimentOutcome outcome =
      run_experiment(initial, circuit, spec, obs, options);
  CHECK(outcome.total_trials == 1);
  CHECK(outcome.excluded_trials == 0);
  CHECK(std::abs(outcome.mean_conventional - outcome.e_ideal) < 1e-10);
  CHECK(std::abs(outcome.mean_rescaled - outcome.e_ideal) < 1e-10);
  CHECK(outcome.mean_retained == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(outcome.detection.aggregate == 0.0);
  CHECK(outcome.records[0].gate_index == -1);
  CHECK(outcome.records[0].label.is_identity());
}

TEST_CASE("Monte Carlo sampling approaches the exhaustive ensemble") {
  const QutritState initial = basis_state("00");
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  NoiseSpec spec;
  const Observable obs = observable_from_logical(sigma_zz(), 2);

  RunOptions exact_opts;
  const ExperimentOutcome exact =
      run_experiment(initial, circuit, spec, obs, exact_opts);

  RunOptions mc_opts;
  mc_opts.trials = 4000;
  mc_opts.seed = 42;
  const ExperimentOutcome mc =
      run_experiment(initial, circuit, spec, obs, mc_opts);

  CHECK_FALSE(mc.exact);
  CHECK(mc.total_trials == 4000);
  // Branch values sit in {-1, 0, +1}: 4 sigma of the sampled mean is 0.042.
  CHECK(std::abs(mc.mean_conventional - exact.mean_conventional) < 0.05);
  CHECK(std::abs(mc.detection.aggregate - exact.detection.aggregate) < 0.04);
  CHECK(mc.detection.aggregate_sigma > 0.0);
  CHECK(mc.detection.aggregate ==
        doctest::Approx(mc.detection.sums.aggregate()).epsilon(1e-12));

  // Same seed, same bytes.
  const ExperimentOutcome repeat =
      run_experiment(initial, circuit, spec, obs, mc_opts);
  RunSpec run;
  run.trials = mc_opts.trials;
  run.seed = mc_opts.seed;
  CHECK(results_json(mc, run, spec) == results_json(repeat, run, spec));
}

TEST_CASE("thread count changes nothing in the serialized results") {
  std::mt19937_64 gen(206);
  const QutritState initial = test::random_logical_state(3, gen);
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  circuit.push_back(random_logical_gate(2, gen));
  circuit.push_back(controlled_flip(1, 2));
  NoiseSpec spec;
  const Observable obs =
      observable_from_logical(logical_pauli_string("ZIZ"), 3);

  RunSpec run;
  run.seed = 7;

  SUBCASE("exhaustive ensemble") {
    RunOptions options;
    options.seed = 7;
    std::string reference;
    for (const int threads : {1, 3, 4}) {
      options.threads = threads;
      const ExperimentOutcome outcome =
          run_experiment(initial, circuit, spec, obs, options);
      const std::string serialized = results_json(outcome, run, spec);
      if (reference.empty()) {
        reference = serialized;
      } else {
        CHECK(serialized == reference);
      }
    }
  }
  SUBCASE("sampled ensemble with shot noise") {
    RunOptions options;
    options.trials = 500;
    options.shots = 100;
    options.seed = 7;
    RunSpec sampled_run = run;
    sampled_run.trials = 500;
    sampled_run.shots = 100;
    std::string reference;
    for (const int threads : {1, 4}) {
      options.threads = threads;
      const ExperimentOutcome outcome =
          run_experiment(initial, circuit, spec, obs, options);
      const std::string serialized = results_json(outcome, sampled_run, spec);
      if (reference.empty()) {
        reference = serialized;
      } else {
        CHECK(serialized == reference);
      }
    }
  }
}

TEST_CASE("shot-sampled estimators stay within the spectrum") {
  const QutritState initial = basis_state("00");
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  NoiseSpec spec;
  const Observable obs = observable_from_logical(sigma_zz(), 2);
  RunOptions options;
  options.trials = 200;
  options.shots = 50;
  options.seed = 3;

  const ExperimentOutcome outcome =
      run_experiment(initial, circuit, spec, obs, options);
  for (const TrialRecord& rec : outcome.records) {
    CHECK(rec.e_conventional >= -1.0 - 1e-12);
    CHECK(rec.e_conventional <= 1.0 + 1e-12);
    if (rec.e_rescaled.has_value()) {
      CHECK(*rec.e_rescaled >= -1.0 - 1e-12);
      CHECK(*rec.e_rescaled <= 1.0 + 1e-12);
    }
    CHECK(rec.retained >= 0.0);
    CHECK(rec.retained <= 1.0 + 1e-12);
  }
}

TEST_CASE("one-hot location weights pin every branch to one gate") {
  const QutritState initial = basis_state("000");
  Circuit circuit;
  circuit.push_back(two_site_identity(0, 1));
  circuit.push_back(controlled_flip(1, 2));
  NoiseSpec spec;
  spec.location_weights = {0.0, 1.0};
  const Observable obs =
      observable_from_logical(logical_pauli_string("ZZI"), 3);
  RunOptions options;

  const ExperimentOutcome outcome =
      run_experiment(initial, circuit, spec, obs, options);
  CHECK(outcome.total_trials == 80);
  for (const TrialRecord& rec : outcome.records) {
    CHECK(rec.gate_index == 1);
  }
}

TEST_CASE("clock-only noise ensemble: nothing leaks, nothing drifts") {
  const QutritState initial = basis_state("00");
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  NoiseSpec spec;
  spec.mode = NoiseMode::Asymmetric;
  spec.x_weight = 0.0;
  spec.z_weight = 1.0;
  const Observable obs = observable_from_logical(sigma_zz(), 2);
  RunOptions options;

  const ExperimentOutcome outcome =
      run_experiment(initial, circuit, spec, obs, options);
  CHECK(outcome.total_trials == 8);  // only clock-only labels carry mass
  CHECK(outcome.excluded_trials == 0);
  for (const TrialRecord& rec : outcome.records) {
    CHECK(classify_label(rec.label) == ErrorSubset::S4);
    CHECK(rec.retained == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Clock errors only rotate phases; the diagonal observable cannot see
  // them on a basis-state input.
  CHECK(outcome.mean_conventional ==
        doctest::Approx(outcome.e_ideal).epsilon(1e-12));
  CHECK(outcome.detection.aggregate <= 1e-12);
}

TEST_CASE("a sampled ensemble whose only branch leaks raises AllLeakedError") {
  // Exhaustive ensembles always include surviving clock-only branches, so
  // the all-leaked stop is only reachable through sampling. With one trial
  // the substream decides the branch: split seeds by what they draw and pin
  // the behavior on both sides.
  const QutritState initial = basis_state("11");
  Circuit circuit;
  circuit.push_back(two_site_identity(0, 1));
  NoiseSpec spec;
  const Observable obs = observable_from_logical(sigma_zz(), 2);

  int leaking_seeds = 0;
  int surviving_seeds = 0;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    Substream rng(seed, 0);
    const auto draw = sample_noise(spec, circuit, rng);
    REQUIRE(draw.has_value());
    // On |11> a shift exponent of 1 on either site expels the state.
    const bool fully_leaks = draw->label.xa == 1 || draw->label.xb == 1;

    RunOptions options;
    options.trials = 1;
    options.seed = seed;
    if (fully_leaks) {
      ++leaking_seeds;
      CHECK_THROWS_AS(run_experiment(initial, circuit, spec, obs, options),
                      AllLeakedError);
    } else {
      ++surviving_seeds;
      const ExperimentOutcome outcome =
          run_experiment(initial, circuit, spec, obs, options);
      CHECK(outcome.excluded_trials == 0);
    }
  }
  // Both behaviors must actually occur across 16 seeds (p ~ 0.56 each way).
  CHECK(leaking_seeds > 0);
  CHECK(surviving_seeds > 0);
}

TEST_CASE("mismatched observable and state are rejected") {
  const QutritState initial = basis_state("00");
  Circuit circuit;
  circuit.push_back(controlled_flip(0, 1));
  NoiseSpec spec;
  const Observable obs = observable_from_logical(logical_pauli_string("Z"), 1);
  RunOptions options;
  CHECK_THROWS_AS(run_experiment(initial, circuit, spec, obs, options),
                  ValidationError);
}

}  // namespace
}  // namespace holoq
