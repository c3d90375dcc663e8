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

#include "holoq/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "holoq/errors.hpp"

namespace holoq {

Observable observable_from_logical(const Matrix& logical, int num_sites) {
  if (num_sites < 1) {
    throw ValidationError("observable: need at least one site");
  }
  const Eigen::Index logical_dim = Eigen::Index(1) << num_sites;
  if (logical.rows() != logical_dim || logical.cols() != logical_dim) {
    std::ostringstream msg;
    msg << "observable: expected a " << logical_dim << "x" << logical_dim
        << " logical operator, got " << logical.rows() << "x"
        << logical.cols();
    throw ValidationError(msg.str());
  }
  const double defect = max_abs(logical - logical.adjoint().eval());
  if (defect > kStateTol) {
    std::ostringstream msg;
    msg << "observable: logical operator is not Hermitian (defect " << defect
        << ")";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(logical);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("observable: eigendecomposition failed");
  }

  const auto dim = static_cast<Eigen::Index>(power_of_three(num_sites));
  Observable obs;
  obs.num_sites = num_sites;
  obs.eigenvalues = Eigen::VectorXd::Zero(dim);
  obs.eigenvectors = Matrix::Zero(dim, dim);
  obs.regions.assign(static_cast<std::size_t>(dim), Region::Leakage);

  for (Eigen::Index j = 0; j < logical_dim; ++j) {
    obs.eigenvalues(j) = solver.eigenvalues()(j);
    obs.regions[static_cast<std::size_t>(j)] = Region::Logical;
    for (Eigen::Index r = 0; r < logical_dim; ++r) {
      const auto row = static_cast<Eigen::Index>(
          logical_index_to_full(static_cast<std::size_t>(r), num_sites));
      obs.eigenvectors(row, j) = solver.eigenvectors()(r, j);
    }
  }
  // Leakage block: computational basis states with at least one trit of 2.
  Eigen::Index col = logical_dim;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    if (index_is_logical(static_cast<std::size_t>(idx), num_sites)) {
      continue;
    }
    obs.eigenvectors(idx, col) = 1.0;
    ++col;
  }
  return obs;
}

Matrix logical_pauli_string(std::string_view spec) {
  if (spec.empty()) {
    throw ValidationError("observable string must name at least one site");
  }
  Matrix result = Matrix::Identity(1, 1);
  for (const char c : spec) {
    Matrix factor(2, 2);
    switch (c) {
      case 'I':
        factor = Matrix::Identity(2, 2);
        break;
      case 'X':
        factor << 0, 1, 1, 0;
        break;
      case 'Y':
        factor << 0, Complex(0, -1), Complex(0, 1), 0;
        break;
      case 'Z':
        factor << 1, 0, 0, -1;
        break;
      default: {
        std::ostringstream msg;
        msg << "observable string: unknown character '" << c
            << "' (expected I, X, Y or Z)";
        throw ValidationError(msg.str());
      }
    }
    result = kron(result, factor);
  }
  return result;
}

namespace {

// Clip rounding negatives to 0 and renormalize a near-1 total; anything
// beyond the documented slack is a non-physical input.
OutcomeDistribution finalize_distribution(Eigen::VectorXd raw) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    if (raw(j) < -kProbabilityClipTol) {
      std::ostringstream msg;
      msg << "distribution: outcome probability " << raw(j)
          << " is more negative than the " << kProbabilityClipTol
          << " rounding slack";
      throw ValidationError(msg.str());
    }
    raw(j) = std::max(0.0, raw(j));
    total += raw(j);
  }
  if (std::abs(total - 1.0) > kDistributionSumTol) {
    std::ostringstream msg;
    msg << "distribution: outcome probabilities sum to " << total
        << ", beyond the " << kDistributionSumTol << " slack around 1";
    throw ValidationError(msg.str());
  }
  OutcomeDistribution dist;
  dist.probabilities = raw / total;
  return dist;
}

}  // namespace

OutcomeDistribution exact_distribution(const QutritState& state,
                                       const Observable& observable) {
  if (state.amplitudes.size() != observable.dimension()) {
    throw ValidationError("distribution: state and observable dimensions differ");
  }
  const Vector overlaps = observable.eigenvectors.adjoint() * state.amplitudes;
  return finalize_distribution(overlaps.cwiseAbs2());
}

OutcomeDistribution exact_distribution(const DensityMatrix& rho,
                                       const Observable& observable) {
  if (rho.entries.rows() != observable.dimension()) {
    throw ValidationError("distribution: state and observable dimensions differ");
  }
  const Eigen::Index dim = observable.dimension();
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(dim);
  const Matrix product = observable.eigenvectors.adjoint() *
                         (rho.entries * observable.eigenvectors);
  for (Eigen::Index j = 0; j < dim; ++j) {
    raw(j) = product(j, j).real();
  }
  return finalize_distribution(std::move(raw));
}

OutcomeDistribution sample_distribution(const OutcomeDistribution& exact,
                                        std::uint64_t shots, Substream& rng) {
  if (shots == 0) {
    throw ValidationError("sampling requires at least one shot");
  }
  const Eigen::Index dim = exact.probabilities.size();
  std::vector<double> cumulative(static_cast<std::size_t>(dim));
  std::partial_sum(exact.probabilities.data(),
                   exact.probabilities.data() + dim, cumulative.begin());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(dim);
  for (std::uint64_t s = 0; s < shots; ++s) {
    counts(static_cast<Eigen::Index>(rng.sample_cdf(cumulative))) += 1.0;
  }
  OutcomeDistribution dist;
  dist.probabilities = counts / static_cast<double>(shots);
  dist.shots = shots;
  return dist;
}

double estimate_conventional(const OutcomeDistribution& distribution,
                             const Observable& observable) {
  return distribution.probabilities.dot(observable.eigenvalues);
}

double retained_mass(const OutcomeDistribution& distribution,
                     const Observable& observable) {
  double retained = 0.0;
  for (Eigen::Index j = 0; j < distribution.probabilities.size(); ++j) {
    if (observable.regions[static_cast<std::size_t>(j)] == Region::Logical) {
      retained += distribution.probabilities(j);
    }
  }
  return retained;
}

double estimate_rescaled(const OutcomeDistribution& distribution,
                         const Observable& observable) {
  double retained = 0.0;
  double weighted = 0.0;
  for (Eigen::Index j = 0; j < distribution.probabilities.size(); ++j) {
    if (observable.regions[static_cast<std::size_t>(j)] == Region::Logical) {
      retained += distribution.probabilities(j);
      weighted += distribution.probabilities(j) * observable.eigenvalues(j);
    }
  }
  if (retained <= kRescaledFloor) {
    std::ostringstream msg;
    msg << "rescaled estimate undefined: logical mass " << retained
        << " is at or below " << kRescaledFloor;
    throw AllLeakedError(msg.str());
  }
  return weighted / retained;
}

double expectation(const QutritState& state, const Observable& observable) {
  return estimate_conventional(exact_distribution(state, observable),
                               observable);
}

}  // namespace holoq
