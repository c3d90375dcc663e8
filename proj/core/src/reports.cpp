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

#include "holoq/reports.hpp"

#include <array>
#include <cstdint>

#include "holoq/io.hpp"

namespace holoq {

namespace {

constexpr std::int64_t kSchemaVersion = 1;

void write_label_fields(JsonWriter& w, const PauliLabel& label) {
  w.key("xa").value(static_cast<std::int64_t>(label.xa));
  w.key("za").value(static_cast<std::int64_t>(label.za));
  w.key("xb").value(static_cast<std::int64_t>(label.xb));
  w.key("zb").value(static_cast<std::int64_t>(label.zb));
}

void write_complex(JsonWriter& w, const Complex& z) {
  w.begin_array().value(z.real()).value(z.imag()).end_array();
}

// Fields shared by the standalone detection document and the detection
// block embedded in results.
void write_detection_fields(JsonWriter& w, const DetectionReport& report) {
  w.key("method").value(report.method);
  w.key("trials").value(report.trials);
  w.key("aggregate").value(report.aggregate);
  w.key("aggregate_sigma").value(report.aggregate_sigma);
  w.key("subset_sums").begin_object();
  w.key("S1").value(report.sums.s1);
  w.key("S2").value(report.sums.s2);
  w.key("S3").value(report.sums.s3);
  w.key("S4").value(report.sums.s4);
  w.end_object();
  w.key("per_label").begin_array();
  for (int i = 0; i < kLabelCount; ++i) {
    const PauliLabel label = label_from_index(i);
    w.begin_object();
    write_label_fields(w, label);
    w.key("subset").value(subset_name(classify_label(label)));
    w.key("detection").value(report.per_label[static_cast<std::size_t>(i)]);
    w.end_object();
  }
  w.end_array();
}

}  // namespace

std::string enumeration_json() {
  std::array<std::int64_t, 5> counts{};  // identity, S1..S4
  for (const PauliLabel& label : all_labels()) {
    counts[static_cast<std::size_t>(classify_label(label))] += 1;
  }
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kSchemaVersion);
  w.key("counts").begin_object();
  w.key("identity").value(counts[0]);
  w.key("S1").value(counts[1]);
  w.key("S2").value(counts[2]);
  w.key("S3").value(counts[3]);
  w.key("S4").value(counts[4]);
  w.end_object();
  w.key("note").value(
      "S4 holds the clock-only errors; the identity is tallied separately. "
      "A bookkeeping that folds the identity into the clock-only family "
      "quotes 9 for that family instead of 8. Both agree that exactly 80 "
      "non-identity labels form the error ensemble.");
  w.key("labels").begin_array();
  for (const PauliLabel& label : all_labels()) {
    w.begin_object();
    write_label_fields(w, label);
    w.key("subset").value(subset_name(classify_label(label)));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return std::move(w).str();
}

std::string detection_json(const DetectionReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kSchemaVersion);
  write_detection_fields(w, report);
  w.end_object();
  return std::move(w).str();
}

std::string holonomy_json(const HolonomyReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kSchemaVersion);
  w.key("cyclicity_defect").value(report.cyclicity_defect);
  w.key("parallel_transport_residual")
      .value(report.parallel_transport_residual);
  w.key("projected_gate").begin_array();
  for (Eigen::Index r = 0; r < report.projected_gate.rows(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < report.projected_gate.cols(); ++c) {
      write_complex(w, report.projected_gate(r, c));
    }
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return std::move(w).str();
}

std::string results_json(const ExperimentOutcome& outcome, const RunSpec& run,
                         const NoiseSpec& noise) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version").value(kSchemaVersion);
  w.key("mode").value(outcome.exact ? "exact" : "sampled");
  w.key("run").begin_object();
  w.key("trials").value(run.trials);
  w.key("shots").value(run.shots);
  w.key("seed").value(run.seed);
  w.end_object();
  w.key("noise").begin_object();
  w.key("mode").value(noise_mode_name(noise.mode));
  w.key("x_weight").value(noise.x_weight);
  w.key("z_weight").value(noise.z_weight);
  w.key("location_weights");
  if (noise.location_weights.empty()) {
    w.null();  // uniform over the two-site gates
  } else {
    w.begin_array();
    for (const double weight : noise.location_weights) {
      w.value(weight);
    }
    w.end_array();
  }
  w.end_object();
  w.key("results").begin_object();
  w.key("e_ideal").value(outcome.e_ideal);
  w.key("mean_conventional").value(outcome.mean_conventional);
  w.key("mean_rescaled").value(outcome.mean_rescaled);
  w.key("mean_abs_err_conventional")
      .value(outcome.mean_abs_err_conventional);
  w.key("mean_abs_err_rescaled").value(outcome.mean_abs_err_rescaled);
  w.key("error_reduction_percent");
  if (outcome.mean_abs_err_conventional > 0.0) {
    w.value((1.0 - outcome.mean_abs_err_rescaled /
                       outcome.mean_abs_err_conventional) *
            100.0);
  } else {
    w.null();
  }
  w.key("mean_retained").value(outcome.mean_retained);
  w.key("total_trials").value(outcome.total_trials);
  w.key("excluded_trials").value(outcome.excluded_trials);
  w.end_object();
  w.key("detection").begin_object();
  write_detection_fields(w, outcome.detection);
  w.end_object();
  w.end_object();
  return std::move(w).str();
}

std::string trial_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "trial,gate_index,xa,za,xb,zb,subset,weight,retained,"
      "e_conventional,e_rescaled,excluded\n";
  for (const TrialRecord& rec : records) {
    out += std::to_string(rec.trial);
    out += ',';
    out += std::to_string(rec.gate_index);
    out += ',';
    out += std::to_string(rec.label.xa);
    out += ',';
    out += std::to_string(rec.label.za);
    out += ',';
    out += std::to_string(rec.label.xb);
    out += ',';
    out += std::to_string(rec.label.zb);
    out += ',';
    out += subset_name(classify_label(rec.label));
    out += ',';
    out += JsonWriter::format_double(rec.weight);
    out += ',';
    out += JsonWriter::format_double(rec.retained);
    out += ',';
    out += JsonWriter::format_double(rec.e_conventional);
    out += ',';
    if (rec.e_rescaled.has_value()) {
      out += JsonWriter::format_double(*rec.e_rescaled);
    }
    out += ',';
    out += rec.e_rescaled.has_value() ? '0' : '1';
    out += '\n';
  }
  return out;
}

}  // namespace holoq
