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

#ifndef HOLOQ_ALGEBRA_HPP_
#define HOLOQ_ALGEBRA_HPP_

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace holoq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Absolute tolerance for exact-algebra assertions (max-norm on 3x3/9x9
// products in double precision).
inline constexpr double kAlgebraTol = 1e-12;

// Entrywise max-norm.
double max_abs(const Matrix& m);

// ||U^dag U - I||_max.
double unitarity_defect(const Matrix& u);

bool is_unitary(const Matrix& u, double tol = kAlgebraTol);

// Kronecker product, first factor on the slow (most significant) index.
Matrix kron(const Matrix& a, const Matrix& b);

// Qutrit shift: X|s> = |s+1 mod 3>.
Matrix pauli_x();

// Qutrit clock: Z|s> = w^s |s>, w = exp(2*pi*i/3).
Matrix pauli_z();

// Primitive cube root of unity.
Complex omega();

// One of the 81 two-qutrit generalized Pauli operators
// X^{xa} Z^{za} (x) X^{xb} Z^{zb}, exponents in {0,1,2}. Within a factor the
// clock acts first on a ket: the matrix is X^x * Z^z.
struct PauliLabel {
  int xa = 0;  // shift exponent, site a
  int za = 0;  // clock exponent, site a
  int xb = 0;  // shift exponent, site b
  int zb = 0;  // clock exponent, site b

  bool operator==(const PauliLabel&) const = default;
  bool is_identity() const { return xa == 0 && za == 0 && xb == 0 && zb == 0; }
};

inline constexpr int kLabelCount = 81;       // all two-qutrit operators
inline constexpr int kErrorLabelCount = 80;  // identity excluded

// Dense enumeration index in [0, 81): lexicographic over (xa, za, xb, zb).
int label_index(const PauliLabel& label);
PauliLabel label_from_index(int index);

// Error classes of the non-identity operators, keyed by which sites carry a
// shift factor: S1 both, S2 only a, S3 only b, S4 neither (clock-only).
enum class ErrorSubset { Identity, S1, S2, S3, S4 };

ErrorSubset classify_label(const PauliLabel& label);
std::string subset_name(ErrorSubset subset);

// All 81 labels in enumeration order.
const std::array<PauliLabel, kLabelCount>& all_labels();

// Members of one subset, in enumeration order. |S1|=36, |S2|=|S3|=18, |S4|=8.
std::vector<PauliLabel> subset_members(ErrorSubset subset);

// The 9x9 matrix X^{xa} Z^{za} (x) X^{xb} Z^{zb}. Site a is the first
// (most significant) factor. Throws std::invalid_argument on exponents
// outside {0,1,2}.
Matrix build_error_operator(const PauliLabel& label);

}  // namespace holoq

#endif  // HOLOQ_ALGEBRA_HPP_
