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

#ifndef HOLOQ_STATE_HPP_
#define HOLOQ_STATE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "holoq/algebra.hpp"

namespace holoq {

inline constexpr double kStateTol = 1e-10;

// Probability mass below which a projected state counts as fully leaked and
// the renormalization factor is undefined.
inline constexpr double kAllLeakedTol = 1e-15;

// Pure state of n qutrits. Amplitudes indexed by ternary strings with site 0
// as the most significant trit.
struct QutritState {
  int num_sites = 0;
  Vector amplitudes;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
};

// Mixed state of n qutrits, 3^n x 3^n.
struct DensityMatrix {
  int num_sites = 0;
  Matrix entries;
};

std::size_t power_of_three(int n);

// Trit of `index` at `site` (big-endian).
int trit_at(std::size_t index, int site, int n);

// True iff no trit of `index` equals 2.
bool index_is_logical(std::size_t index, int n);

// Ternary index whose trits are the bits of `bits` (logical embedding).
std::size_t logical_index_to_full(std::size_t bits, int n);

// Computational basis ket from a ternary string like "0212". Throws
// std::invalid_argument on characters outside {0,1,2} or empty input.
QutritState basis_state(std::string_view trits);

// Embed 2^n logical amplitudes into the 3^n space (no renormalization).
QutritState embed_logical_amplitudes(int n, const Vector& logical_amps);

double norm(const QutritState& state);
QutritState normalized(const QutritState& state);

// Apply a 3x3 operator to one site, identity elsewhere.
QutritState apply_one_site(const QutritState& state, const Matrix& op, int site);

// Apply a 9x9 operator to the ordered site pair (site_a, site_b); the first
// Kronecker factor of `op` acts on site_a. Throws std::invalid_argument on
// site collision or out-of-range sites.
QutritState apply_two_site(const QutritState& state, const Matrix& op,
                           int site_a, int site_b);

// Result of projecting onto the logical subspace {|0>,|1>}^n: the projected
// object is left unnormalized; `retained` is its probability mass.
struct Projection {
  QutritState state;
  double retained = 0.0;
};

struct DensityProjection {
  DensityMatrix density;
  double retained = 0.0;
};

Projection project_logical(const QutritState& state);
DensityProjection project_logical(const DensityMatrix& rho);

// 1/retained for renormalizing a projected state. Throws AllLeakedError when
// the retained mass is below kAllLeakedTol.
double renormalization_factor(double retained);

// 1 - retained mass, clamped to [0, 1].
double leak_probability(const QutritState& state);

DensityMatrix density_from_pure(const QutritState& state);

// (1 - p) * a + p * b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p);

// Apply a 9x9 operator to a density matrix on the ordered pair (site_a, site_b).
DensityMatrix apply_two_site(const DensityMatrix& rho, const Matrix& op,
                             int site_a, int site_b);

// Hermiticity / unit-trace / eigenvalue-floor check. Throws ValidationError.
// Validation path only; not called from hot loops.
void validate_density(const DensityMatrix& rho, double tol = kStateTol);

// Debug/fixture snapshot: {"n": ..., "amplitudes": [[re, im], ...]}.
std::string snapshot_json(const QutritState& state);

}  // namespace holoq

#endif  // HOLOQ_STATE_HPP_
