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

#include "holoq/algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace holoq {

double max_abs(const Matrix& m) {
  return m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  const Matrix gram = u.adjoint() * u;
  return max_abs(gram - Matrix::Identity(u.cols(), u.cols()));
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Complex omega() {
  const double angle = 2.0 * std::numbers::pi / 3.0;
  return {std::cos(angle), std::sin(angle)};
}

Matrix pauli_x() {
  Matrix x = Matrix::Zero(3, 3);
  x(1, 0) = 1.0;
  x(2, 1) = 1.0;
  x(0, 2) = 1.0;
  return x;
}

Matrix pauli_z() {
  Matrix z = Matrix::Zero(3, 3);
  const Complex w = omega();
  z(0, 0) = 1.0;
  z(1, 1) = w;
  z(2, 2) = w * w;
  return z;
}

int label_index(const PauliLabel& label) {
  return ((label.xa * 3 + label.za) * 3 + label.xb) * 3 + label.zb;
}

PauliLabel label_from_index(int index) {
  if (index < 0 || index >= kLabelCount) {
    throw std::invalid_argument("label index out of range: " + std::to_string(index));
  }
  PauliLabel label;
  label.zb = index % 3;
  index /= 3;
  label.xb = index % 3;
  index /= 3;
  label.za = index % 3;
  label.xa = index / 3;
  return label;
}

namespace {

void check_label(const PauliLabel& label) {
  const auto in_range = [](int e) { return e >= 0 && e <= 2; };
  if (!in_range(label.xa) || !in_range(label.za) || !in_range(label.xb) ||
      !in_range(label.zb)) {
    throw std::invalid_argument("generalized Pauli exponents must lie in {0,1,2}");
  }
}

Matrix matrix_power3(const Matrix& m, int e) {
  if (e == 0) return Matrix::Identity(3, 3);
  if (e == 1) return m;
  return m * m;
}

}  // namespace

ErrorSubset classify_label(const PauliLabel& label) {
  check_label(label);
  if (label.is_identity()) return ErrorSubset::Identity;
  const bool shift_a = label.xa != 0;
  const bool shift_b = label.xb != 0;
  if (shift_a && shift_b) return ErrorSubset::S1;
  if (shift_a) return ErrorSubset::S2;
  if (shift_b) return ErrorSubset::S3;
  return ErrorSubset::S4;
}

std::string subset_name(ErrorSubset subset) {
  switch (subset) {
    case ErrorSubset::Identity: return "identity";
    case ErrorSubset::S1: return "S1";
    case ErrorSubset::S2: return "S2";
    case ErrorSubset::S3: return "S3";
    case ErrorSubset::S4: return "S4";
  }
  return "?";
}

const std::array<PauliLabel, kLabelCount>& all_labels() {
  static const std::array<PauliLabel, kLabelCount> labels = [] {
    std::array<PauliLabel, kLabelCount> out;
    for (int i = 0; i < kLabelCount; ++i) out[i] = label_from_index(i);
    return out;
  }();
  return labels;
}

std::vector<PauliLabel> subset_members(ErrorSubset subset) {
  std::vector<PauliLabel> members;
  for (const PauliLabel& label : all_labels()) {
    if (classify_label(label) == subset) members.push_back(label);
  }
  return members;
}

Matrix build_error_operator(const PauliLabel& label) {
  check_label(label);
  const Matrix x = pauli_x();
  const Matrix z = pauli_z();
  const Matrix site_a = matrix_power3(x, label.xa) * matrix_power3(z, label.za);
  const Matrix site_b = matrix_power3(x, label.xb) * matrix_power3(z, label.zb);
  return kron(site_a, site_b);
}

}  // namespace holoq
