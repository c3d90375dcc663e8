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

#include "holoq/holonomy.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

namespace holoq {

namespace {

Matrix nearest_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Snap a near-block-diagonal 3x3 propagator to an exactly block-diagonal
// unitary: polar-polish the logical corner, phase-normalize the |2> sector,
// drop the (already defect-bounded) cross terms.
Matrix block_polish(const Matrix& raw) {
  Matrix out = Matrix::Zero(3, 3);
  out.topLeftCorner(2, 2) = nearest_unitary(raw.topLeftCorner(2, 2));
  out(2, 2) = raw(2, 2) / std::abs(raw(2, 2));
  return out;
}

struct FrameResult {
  Matrix unitary;                           // raw evolved frame at t = duration
  double cyclicity_defect = 0.0;
  double parallel_transport_residual = 0.0;
};

// Fixed-step RK4 for dU/dt = -i * envelope(t) * C * U with multiplier m in
// {1, 2}: step h = duration / (steps * m). Envelope values at t, t + h/2 and
// t + h are exact grid samples (spacing duration / (4 * steps)).
FrameResult integrate_frame(const PulseSchedule& s, int multiplier) {
  const int total_steps = s.steps * multiplier;
  const double h = s.duration / total_steps;
  const int stride = 4 / multiplier;  // grid indices per step
  const Matrix coupling = s.coupling();
  const Complex mi(0.0, -1.0);

  Matrix u = Matrix::Identity(3, 3);
  FrameResult result;

  auto record_residual = [&](const Matrix& frame, double omega) {
    // Dynamical-phase check on the logical frame columns only.
    Matrix overlap =
        frame.leftCols(2).adjoint() * (omega * coupling) * frame.leftCols(2);
    result.parallel_transport_residual =
        std::max(result.parallel_transport_residual, max_abs(overlap));
  };

  record_residual(u, s.envelope[0]);
  for (int k = 0; k < total_steps; ++k) {
    const double w0 = s.envelope[static_cast<std::size_t>(k) * stride];
    const double w1 =
        s.envelope[static_cast<std::size_t>(k) * stride + stride / 2];
    const double w2 = s.envelope[static_cast<std::size_t>(k + 1) * stride];
    const Matrix k1 = mi * w0 * (coupling * u);
    const Matrix k2 = mi * w1 * (coupling * (u + 0.5 * h * k1));
    const Matrix k3 = mi * w1 * (coupling * (u + 0.5 * h * k2));
    const Matrix k4 = mi * w2 * (coupling * (u + h * k3));
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record_residual(u, w2);
  }

  Matrix p0 = Matrix::Zero(3, 3);
  p0(0, 0) = 1.0;
  p0(1, 1) = 1.0;
  Matrix p_final = u.leftCols(2) * u.leftCols(2).adjoint();
  result.cyclicity_defect = max_abs(p_final - p0);
  result.unitary = std::move(u);
  return result;
}

}  // namespace

PulseSchedule PulseSchedule::lambda_pulse(double theta, double phi,
                                          double area, int steps) {
  PulseSchedule s;
  s.theta = theta;
  s.phi = phi;
  s.area = area;
  s.duration = 1.0;
  s.steps = steps;
  const std::size_t samples = static_cast<std::size_t>(4) * steps + 1;
  s.envelope.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = s.duration * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    const double phase = std::sin(std::numbers::pi * t / s.duration);
    s.envelope[i] = 2.0 * area / s.duration * phase * phase;
  }
  return s;
}

Matrix PulseSchedule::coupling() const {
  const Complex omega_a =
      std::sin(theta / 2.0) * std::exp(Complex(0.0, phi));
  const Complex omega_b = -std::cos(theta / 2.0);
  Matrix c = Matrix::Zero(3, 3);
  c(2, 0) = omega_a;
  c(2, 1) = omega_b;
  c(0, 2) = std::conj(omega_a);
  c(1, 2) = std::conj(omega_b);
  return c;
}

void PulseSchedule::validate() const {
  if (duration <= 0.0) {
    throw ValidationError("pulse schedule: duration must be positive");
  }
  if (steps < 1) {
    throw ValidationError("pulse schedule: steps must be at least 1");
  }
  const std::size_t expected = static_cast<std::size_t>(4) * steps + 1;
  if (envelope.size() != expected) {
    std::ostringstream msg;
    msg << "pulse schedule: expected " << expected << " envelope samples, got "
        << envelope.size();
    throw ValidationError(msg.str());
  }
  // Trapezoid quadrature on the sample grid must reproduce the declared area.
  const double dt = duration / static_cast<double>(expected - 1);
  double quad = 0.0;
  for (std::size_t i = 0; i + 1 < expected; ++i) {
    quad += 0.5 * dt * (envelope[i] + envelope[i + 1]);
  }
  if (std::abs(quad - area) > 1e-6) {
    std::ostringstream msg;
    msg << "pulse schedule: envelope quadrature " << quad
        << " disagrees with declared area " << area;
    throw ValidationError(msg.str());
  }
}

HolonomyReport integrate_schedule(const PulseSchedule& schedule) {
  schedule.validate();
  const FrameResult coarse = integrate_frame(schedule, 1);
  const FrameResult fine = integrate_frame(schedule, 2);
  const double drift = max_abs(coarse.unitary - fine.unitary);
  if (drift > kIntegratorConvergenceTol) {
    std::ostringstream msg;
    msg << "schedule integration not converged: halving the step moved the "
           "result by "
        << drift << " (tolerance " << kIntegratorConvergenceTol
        << "); increase steps";
    throw ValidationError(msg.str());
  }
  HolonomyReport report;
  report.cyclicity_defect = coarse.cyclicity_defect;
  report.parallel_transport_residual = coarse.parallel_transport_residual;
  report.projected_gate = nearest_unitary(coarse.unitary.topLeftCorner(2, 2));
  return report;
}

HolonomicGate gate_from_schedule(const PulseSchedule& schedule, int site) {
  schedule.validate();
  const FrameResult coarse = integrate_frame(schedule, 1);
  const FrameResult fine = integrate_frame(schedule, 2);
  const double drift = max_abs(coarse.unitary - fine.unitary);
  if (drift > kIntegratorConvergenceTol) {
    std::ostringstream msg;
    msg << "schedule integration not converged: halving the step moved the "
           "result by "
        << drift << "; increase steps";
    throw ValidationError(msg.str());
  }
  HolonomyReport report;
  report.cyclicity_defect = coarse.cyclicity_defect;
  report.parallel_transport_residual = coarse.parallel_transport_residual;
  report.projected_gate = nearest_unitary(coarse.unitary.topLeftCorner(2, 2));
  if (report.cyclicity_defect > kHolonomyDefectTol ||
      report.parallel_transport_residual > kHolonomyDefectTol) {
    std::ostringstream msg;
    msg << "schedule is not holonomic: cyclicity defect "
        << report.cyclicity_defect << ", parallel-transport residual "
        << report.parallel_transport_residual << " (tolerance "
        << kHolonomyDefectTol << ")";
    throw NotHolonomicError(msg.str(), std::move(report));
  }
  HolonomicGate gate;
  gate.arity = 1;
  gate.unitary = block_polish(coarse.unitary);
  gate.sites = {site, -1};
  return gate;
}

HolonomicGate embed_logical_unitary(const Matrix& logical_unitary,
                                    std::span<const int> sites) {
  const int k = static_cast<int>(sites.size());
  if (k != 1 && k != 2) {
    throw ValidationError("logical embedding: expected 1 or 2 sites");
  }
  const Eigen::Index logical_dim = Eigen::Index(1) << k;
  if (logical_unitary.rows() != logical_dim ||
      logical_unitary.cols() != logical_dim) {
    std::ostringstream msg;
    msg << "logical embedding: expected a " << logical_dim << "x" << logical_dim
        << " matrix, got " << logical_unitary.rows() << "x"
        << logical_unitary.cols();
    throw ValidationError(msg.str());
  }
  const double defect = unitarity_defect(logical_unitary);
  if (defect > kBlockPreservationTol) {
    std::ostringstream msg;
    msg << "logical embedding: input is not unitary (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
  const Matrix snapped = nearest_unitary(logical_unitary);

  const auto dim = static_cast<Eigen::Index>(power_of_three(k));
  Matrix full = Matrix::Identity(dim, dim);
  for (Eigen::Index r = 0; r < logical_dim; ++r) {
    for (Eigen::Index c = 0; c < logical_dim; ++c) {
      full(logical_index_to_full(static_cast<std::size_t>(r), k),
           logical_index_to_full(static_cast<std::size_t>(c), k)) =
          snapped(r, c);
    }
  }
  HolonomicGate gate;
  gate.arity = k;
  gate.unitary = std::move(full);
  gate.sites = {sites[0], k == 2 ? sites[1] : -1};
  return gate;
}

Matrix local_logical_projector(int k) {
  const auto dim = static_cast<Eigen::Index>(power_of_three(k));
  Matrix p = Matrix::Zero(dim, dim);
  const std::size_t logical_dim = std::size_t{1} << k;
  for (std::size_t r = 0; r < logical_dim; ++r) {
    const std::size_t full = logical_index_to_full(r, k);
    p(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full)) = 1.0;
  }
  return p;
}

double block_preservation_defect(const Matrix& unitary, int k) {
  const Matrix p = local_logical_projector(k);
  const Matrix q = Matrix::Identity(p.rows(), p.cols()) - p;
  return max_abs(q * unitary * p);
}

void validate_gate(const HolonomicGate& gate) {
  if (gate.arity != 1 && gate.arity != 2) {
    throw ValidationError("gate: arity must be 1 or 2");
  }
  const auto dim = static_cast<Eigen::Index>(power_of_three(gate.arity));
  if (gate.unitary.rows() != dim || gate.unitary.cols() != dim) {
    throw ValidationError("gate: matrix dimension does not match arity");
  }
  const double u_defect = unitarity_defect(gate.unitary);
  if (u_defect > kGateUnitaryTol) {
    std::ostringstream msg;
    msg << "gate: unitarity defect " << u_defect << " exceeds "
        << kGateUnitaryTol;
    throw ValidationError(msg.str());
  }
  const double b_defect = block_preservation_defect(gate.unitary, gate.arity);
  if (b_defect > kBlockPreservationTol) {
    std::ostringstream msg;
    msg << "gate: logical-block leakage " << b_defect << " exceeds "
        << kBlockPreservationTol;
    throw ValidationError(msg.str());
  }
}

QutritState apply_gate(const QutritState& state, const HolonomicGate& gate) {
  if (gate.arity == 1) {
    return apply_one_site(state, gate.unitary, gate.sites[0]);
  }
  return apply_two_site(state, gate.unitary, gate.sites[0], gate.sites[1]);
}

}  // namespace holoq
