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

#include "holoq/state.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "holoq/errors.hpp"
#include "holoq/io.hpp"

namespace holoq {

std::size_t power_of_three(int n) {
  if (n < 0) throw std::invalid_argument("negative qutrit count");
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= 3;
  return dim;
}

namespace {

// 3^(n-1-site): stride of `site` in the big-endian ternary index.
std::size_t site_stride(int site, int n) {
  return power_of_three(n - 1 - site);
}

void check_site(int site, int n) {
  if (site < 0 || site >= n) {
    throw std::invalid_argument("site " + std::to_string(site) +
                                " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

int trit_at(std::size_t index, int site, int n) {
  return static_cast<int>((index / site_stride(site, n)) % 3);
}

bool index_is_logical(std::size_t index, int n) {
  for (int s = 0; s < n; ++s) {
    if (index % 3 == 2) return false;
    index /= 3;
  }
  return true;
}

std::size_t logical_index_to_full(std::size_t bits, int n) {
  std::size_t full = 0;
  std::size_t stride = 1;
  for (int s = 0; s < n; ++s) {
    full += ((bits >> s) & 1u) * stride;
    stride *= 3;
  }
  return full;
}

QutritState basis_state(std::string_view trits) {
  if (trits.empty()) throw std::invalid_argument("empty ternary string");
  std::size_t index = 0;
  for (char c : trits) {
    if (c < '0' || c > '2') {
      throw std::invalid_argument(std::string("invalid trit character '") + c + "'");
    }
    index = index * 3 + static_cast<std::size_t>(c - '0');
  }
  QutritState state;
  state.num_sites = static_cast<int>(trits.size());
  state.amplitudes = Vector::Zero(static_cast<Eigen::Index>(power_of_three(state.num_sites)));
  state.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return state;
}

QutritState embed_logical_amplitudes(int n, const Vector& logical_amps) {
  const std::size_t logical_dim = std::size_t{1} << n;
  if (static_cast<std::size_t>(logical_amps.size()) != logical_dim) {
    throw std::invalid_argument("logical amplitude count must be 2^n");
  }
  QutritState state;
  state.num_sites = n;
  state.amplitudes = Vector::Zero(static_cast<Eigen::Index>(power_of_three(n)));
  for (std::size_t bits = 0; bits < logical_dim; ++bits) {
    state.amplitudes(static_cast<Eigen::Index>(logical_index_to_full(bits, n))) =
        logical_amps(static_cast<Eigen::Index>(bits));
  }
  return state;
}

double norm(const QutritState& state) {
  return state.amplitudes.norm();
}

QutritState normalized(const QutritState& state) {
  const double nrm = norm(state);
  if (nrm < kAllLeakedTol) {
    throw std::invalid_argument("cannot normalize a zero state");
  }
  return {state.num_sites, state.amplitudes / nrm};
}

QutritState apply_one_site(const QutritState& state, const Matrix& op, int site) {
  check_site(site, state.num_sites);
  if (op.rows() != 3 || op.cols() != 3) {
    throw std::invalid_argument("one-site operator must be 3x3");
  }
  const std::size_t dim = state.dimension();
  const std::size_t stride = site_stride(site, state.num_sites);
  QutritState out;
  out.num_sites = state.num_sites;
  out.amplitudes = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base / stride) % 3 != 0) continue;
    Complex in[3];
    for (int t = 0; t < 3; ++t) in[t] = state.amplitudes(static_cast<Eigen::Index>(base + t * stride));
    for (int r = 0; r < 3; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 3; ++c) acc += op(r, c) * in[c];
      out.amplitudes(static_cast<Eigen::Index>(base + r * stride)) = acc;
    }
  }
  return out;
}

QutritState apply_two_site(const QutritState& state, const Matrix& op,
                           int site_a, int site_b) {
  check_site(site_a, state.num_sites);
  check_site(site_b, state.num_sites);
  if (site_a == site_b) throw std::invalid_argument("two-site operator needs distinct sites");
  if (op.rows() != 9 || op.cols() != 9) {
    throw std::invalid_argument("two-site operator must be 9x9");
  }
  const std::size_t dim = state.dimension();
  const std::size_t stride_a = site_stride(site_a, state.num_sites);
  const std::size_t stride_b = site_stride(site_b, state.num_sites);
  QutritState out;
  out.num_sites = state.num_sites;
  out.amplitudes = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base / stride_a) % 3 != 0 || (base / stride_b) % 3 != 0) continue;
    // Row-major block index: first operator factor on site_a.
    Complex in[9];
    for (int ta = 0; ta < 3; ++ta) {
      for (int tb = 0; tb < 3; ++tb) {
        in[ta * 3 + tb] = state.amplitudes(
            static_cast<Eigen::Index>(base + ta * stride_a + tb * stride_b));
      }
    }
    for (int r = 0; r < 9; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 9; ++c) acc += op(r, c) * in[c];
      out.amplitudes(static_cast<Eigen::Index>(base + (r / 3) * stride_a +
                                               (r % 3) * stride_b)) = acc;
    }
  }
  return out;
}

Projection project_logical(const QutritState& state) {
  Projection result;
  result.state.num_sites = state.num_sites;
  result.state.amplitudes = Vector::Zero(state.amplitudes.size());
  double retained = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (!index_is_logical(i, state.num_sites)) continue;
    const Complex amp = state.amplitudes(static_cast<Eigen::Index>(i));
    result.state.amplitudes(static_cast<Eigen::Index>(i)) = amp;
    retained += std::norm(amp);
  }
  result.retained = retained;
  return result;
}

DensityProjection project_logical(const DensityMatrix& rho) {
  const std::size_t dim = static_cast<std::size_t>(rho.entries.rows());
  DensityProjection result;
  result.density.num_sites = rho.num_sites;
  result.density.entries = Matrix::Zero(rho.entries.rows(), rho.entries.cols());
  double retained = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    if (!index_is_logical(r, rho.num_sites)) continue;
    retained += rho.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)).real();
    for (std::size_t c = 0; c < dim; ++c) {
      if (!index_is_logical(c, rho.num_sites)) continue;
      result.density.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rho.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  result.retained = retained;
  return result;
}

double renormalization_factor(double retained) {
  if (retained < kAllLeakedTol) {
    throw AllLeakedError("retained probability " + std::to_string(retained) +
                         " too small to renormalize");
  }
  return 1.0 / retained;
}

double leak_probability(const QutritState& state) {
  const double leaked = 1.0 - project_logical(state).retained;
  if (leaked < 0.0) return 0.0;
  if (leaked > 1.0) return 1.0;
  return leaked;
}

DensityMatrix density_from_pure(const QutritState& state) {
  DensityMatrix rho;
  rho.num_sites = state.num_sites;
  rho.entries = state.amplitudes * state.amplitudes.adjoint();
  return rho;
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p) {
  if (a.num_sites != b.num_sites) {
    throw std::invalid_argument("cannot mix densities of different size");
  }
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixing weight outside [0,1]");
  return {a.num_sites, (1.0 - p) * a.entries + p * b.entries};
}

DensityMatrix apply_two_site(const DensityMatrix& rho, const Matrix& op,
                             int site_a, int site_b) {
  // U rho U^dag, column by column through the pure-state kernel.
  const Eigen::Index dim = rho.entries.rows();
  Matrix half(dim, dim);
  QutritState column{rho.num_sites, Vector(dim)};
  for (Eigen::Index c = 0; c < dim; ++c) {
    column.amplitudes = rho.entries.col(c);
    half.col(c) = apply_two_site(column, op, site_a, site_b).amplitudes;
  }
  Matrix full(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    column.amplitudes = half.row(r).conjugate().transpose();
    full.row(r) = apply_two_site(column, op, site_a, site_b).amplitudes.conjugate().transpose();
  }
  return {rho.num_sites, full};
}

void validate_density(const DensityMatrix& rho, double tol) {
  if (rho.entries.rows() != rho.entries.cols() ||
      static_cast<std::size_t>(rho.entries.rows()) != power_of_three(rho.num_sites)) {
    throw ValidationError("density matrix dimension is not 3^n");
  }
  if (max_abs(rho.entries - rho.entries.adjoint()) > tol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(rho.entries.trace().real() - 1.0) > tol ||
      std::abs(rho.entries.trace().imag()) > tol) {
    throw ValidationError("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
}

std::string snapshot_json(const QutritState& state) {
  JsonWriter w;
  w.begin_object();
  w.key("n").value(static_cast<std::int64_t>(state.num_sites));
  w.key("amplitudes").begin_array();
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    w.begin_array();
    w.value(state.amplitudes(i).real());
    w.value(state.amplitudes(i).imag());
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return std::move(w).str();
}

}  // namespace holoq
