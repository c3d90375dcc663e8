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

#ifndef HOLOQ_REPORTS_HPP_
#define HOLOQ_REPORTS_HPP_

#include <string>
#include <vector>

#include "holoq/analysis.hpp"
#include "holoq/config.hpp"
#include "holoq/holonomy.hpp"
#include "holoq/noise.hpp"

namespace holoq {

// Every serializer below is deterministic: fixed key order, 17-digit
// doubles, no timestamps. Identical inputs give identical bytes regardless
// of run or thread count.

// Error-label census with subset counts and the identity-bookkeeping note.
std::string enumeration_json();

std::string detection_json(const DetectionReport& report);

std::string holonomy_json(const HolonomyReport& report);

// Aggregate experiment results. Deliberately omits the thread count so the
// bytes do not depend on how the work was scheduled.
std::string results_json(const ExperimentOutcome& outcome, const RunSpec& run,
                         const NoiseSpec& noise);

// Per-branch dump, one line per ensemble member, stable column order.
std::string trial_csv(const std::vector<TrialRecord>& records);

}  // namespace holoq

#endif  // HOLOQ_REPORTS_HPP_
