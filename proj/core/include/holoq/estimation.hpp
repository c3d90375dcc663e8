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

#ifndef HOLOQ_ESTIMATION_HPP_
#define HOLOQ_ESTIMATION_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "holoq/algebra.hpp"
#include "holoq/rng.hpp"
#include "holoq/state.hpp"

namespace holoq {

// Expectations with this little mass on the logical block are treated as
// fully leaked and raise AllLeakedError instead of dividing by noise.
inline constexpr double kRescaledFloor = 1e-12;

// Rounding slack on computed outcome probabilities: entries above
// -kProbabilityClipTol clip to 0, deeper negatives are rejected. Totals
// within kDistributionSumTol of 1 renormalize, larger drift is rejected.
inline constexpr double kProbabilityClipTol = 1e-12;
inline constexpr double kDistributionSumTol = 1e-8;

enum class Region { Logical, Leakage };

// Spectral data of a register observable supported on the logical block:
// the first 2^n eigenvector columns span the block (eigenvalues from the
// logical operator), the rest are the leakage basis states with eigenvalue
// fixed at 0.
struct Observable {
  int num_sites = 0;
  Eigen::VectorXd eigenvalues;   // size 3^n
  Matrix eigenvectors;           // 3^n x 3^n, orthonormal columns
  std::vector<Region> regions;   // size 3^n

  Eigen::Index dimension() const { return eigenvalues.size(); }
};

// Embeds a Hermitian 2^n x 2^n logical operator. Throws ValidationError on a
// dimension mismatch or when ||O - O^dag||_max exceeds 1e-10.
Observable observable_from_logical(const Matrix& logical, int num_sites);

// Tensor product of single-site logical operators named by characters
// I, X, Y, Z (one per site). Throws ValidationError on other characters.
Matrix logical_pauli_string(std::string_view spec);

struct OutcomeDistribution {
  Eigen::VectorXd probabilities;  // one entry per eigenvector column
  std::uint64_t shots = 0;        // 0: exact probabilities
};

// Born-rule outcome probabilities. Entries are clipped at 0 (slack
// kProbabilityClipTol) and the total renormalized (slack
// kDistributionSumTol); drift beyond either slack throws ValidationError.
OutcomeDistribution exact_distribution(const QutritState& state,
                                       const Observable& observable);
OutcomeDistribution exact_distribution(const DensityMatrix& rho,
                                       const Observable& observable);

// Multinomial frequencies from `shots` draws of the exact distribution.
OutcomeDistribution sample_distribution(const OutcomeDistribution& exact,
                                        std::uint64_t shots, Substream& rng);

// sum_j P_j lambda_j over every outcome (leakage outcomes carry 0).
double estimate_conventional(const OutcomeDistribution& distribution,
                             const Observable& observable);

// Probability mass on logical-region outcomes.
double retained_mass(const OutcomeDistribution& distribution,
                     const Observable& observable);

// sum over logical outcomes of P_j lambda_j, divided by the retained mass.
// Throws AllLeakedError when the retained mass is at or below kRescaledFloor.
double estimate_rescaled(const OutcomeDistribution& distribution,
                         const Observable& observable);

double expectation(const QutritState& state, const Observable& observable);

}  // namespace holoq

#endif  // HOLOQ_ESTIMATION_HPP_
