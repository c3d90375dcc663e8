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
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "holoq/errors.hpp"
#include "holoq/holonomy.hpp"
#include "holoq/state.hpp"
#include "test_support.hpp"

namespace holoq {
namespace {

// Logical-block unitary the (theta, phi) pulse should enact.
Matrix analytic_block(double theta, double phi) {
  Matrix u(2, 2);
  const Complex phase = std::polar(1.0, phi);
  u(0, 0) = std::cos(theta);
  u(0, 1) = std::sin(theta) * std::conj(phase);
  u(1, 0) = std::sin(theta) * phase;
  u(1, 1) = -std::cos(theta);
  return u;
}

// H(t) = envelope(t) * C commutes with itself at every pair of times, so the
// time-ordered propagator collapses to a single matrix exponential of the
// integrated envelope. This is an independent oracle for the RK4 route.
Matrix exponential_oracle(const PulseSchedule& s) {
  const Matrix generator = Complex(0.0, -s.area) * s.coupling();
  return generator.exp();
}

TEST_CASE("lambda_pulse builds a consistent sine-squared schedule") {
  const PulseSchedule s = PulseSchedule::lambda_pulse(0.7, 0.3);
  CHECK(s.steps == kDefaultPulseSteps);
  REQUIRE(s.envelope.size() == static_cast<std::size_t>(4) * s.steps + 1);
  CHECK(s.envelope.front() == doctest::Approx(0.0));
  CHECK(s.envelope.back() == doctest::Approx(0.0));
  // Peak value of 2 * area / duration at mid-pulse.
  CHECK(s.envelope[s.envelope.size() / 2] ==
        doctest::Approx(2.0 * s.area / s.duration).epsilon(1e-12));
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("coupling links both logical levels to the auxiliary level only") {
  const double theta = 1.1;
  const double phi = -0.4;
  const PulseSchedule s = PulseSchedule::lambda_pulse(theta, phi);
  const Matrix c = s.coupling();
  CHECK(max_abs(c - c.adjoint()) < kAlgebraTol);
  CHECK(std::abs(c(0, 1)) == 0.0);  // no direct 0-1 transition
  CHECK(std::abs(c(0, 0)) == 0.0);
  CHECK(std::abs(c(1, 1)) == 0.0);
  CHECK(std::abs(c(2, 2)) == 0.0);
  const Complex omega_a = std::sin(theta / 2.0) * std::polar(1.0, phi);
  CHECK(std::abs(c(2, 0) - omega_a) < kAlgebraTol);
  CHECK(std::abs(c(2, 1) + std::cos(theta / 2.0)) < kAlgebraTol);
  // Normalized coupling vector: the two weights are a point on the circle.
  CHECK(std::norm(c(2, 0)) + std::norm(c(2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("validate rejects inconsistent schedules") {
  PulseSchedule s = PulseSchedule::lambda_pulse(0.5, 0.0);
  SUBCASE("nonpositive duration") {
    s.duration = 0.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("nonpositive steps") {
    s.steps = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("wrong sample count") {
    s.envelope.pop_back();
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("quadrature disagrees with the declared area") {
    for (double& v : s.envelope) v *= 1.1;
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
}

TEST_CASE("named rotations come out of the pulse") {
  struct Fixture {
    double theta;
    double phi;
    std::array<Complex, 4> block;  // row-major expected logical block
  };
  const double r = std::numbers::sqrt2 / 2.0;
  const std::vector<Fixture> fixtures = {
      {0.0, 0.0, {1.0, 0.0, 0.0, -1.0}},                        // Z
      {std::numbers::pi / 2.0, 0.0, {0.0, 1.0, 1.0, 0.0}},      // X
      {std::numbers::pi / 4.0, 0.0, {r, r, r, -r}},             // Hadamard
  };
  for (const Fixture& f : fixtures) {
    CAPTURE(f.theta);
    const HolonomicGate gate =
        gate_from_schedule(PulseSchedule::lambda_pulse(f.theta, f.phi), 0);
    CHECK(std::abs(gate.unitary(0, 0) - f.block[0]) < 1e-6);
    CHECK(std::abs(gate.unitary(0, 1) - f.block[1]) < 1e-6);
    CHECK(std::abs(gate.unitary(1, 0) - f.block[2]) < 1e-6);
    CHECK(std::abs(gate.unitary(1, 1) - f.block[3]) < 1e-6);
    CHECK(std::abs(gate.unitary(2, 2) + 1.0) < 1e-6);
  }
}

TEST_CASE("random pulses match the analytic block and the exponential oracle") {
  std::mt19937_64 gen(90);
  std::uniform_real_distribution<double> theta_dist(0.1, std::numbers::pi - 0.1);
  std::uniform_real_distribution<double> phi_dist(-std::numbers::pi,
                                                  std::numbers::pi);
  for (int rep = 0; rep < 6; ++rep) {
    const double theta = theta_dist(gen);
    const double phi = phi_dist(gen);
    CAPTURE(theta);
    CAPTURE(phi);
    const PulseSchedule s = PulseSchedule::lambda_pulse(theta, phi);

    const HolonomyReport report = integrate_schedule(s);
    CHECK(report.cyclicity_defect <= 1e-8);
    CHECK(report.parallel_transport_residual <= 1e-8);

    const HolonomicGate gate = gate_from_schedule(s, 0);
    CHECK(gate.arity == 1);
    CHECK(gate.sites[0] == 0);
    CHECK(gate.sites[1] == -1);
    CHECK_NOTHROW(validate_gate(gate));
    // The stored gate is exactly block diagonal.
    CHECK(std::abs(gate.unitary(2, 0)) == 0.0);
    CHECK(std::abs(gate.unitary(0, 2)) == 0.0);

    const Matrix expected_block = analytic_block(theta, phi);
    CHECK(max_abs(gate.unitary.topLeftCorner(2, 2) - expected_block) < 1e-6);
    CHECK(max_abs(report.projected_gate - expected_block) < 1e-6);

    // Full 3x3 against the commuting-Hamiltonian matrix exponential.
    const Matrix oracle = exponential_oracle(s);
    CHECK(max_abs(gate.unitary - oracle) < 1e-6);
  }
}

TEST_CASE("integrate_schedule and gate_from_schedule share the same frame") {
  const PulseSchedule s = PulseSchedule::lambda_pulse(0.9, 1.2);
  const HolonomyReport report = integrate_schedule(s);
  const HolonomicGate gate = gate_from_schedule(s, 3);
  CHECK(gate.sites[0] == 3);
  CHECK(max_abs(report.projected_gate - gate.unitary.topLeftCorner(2, 2)) <
        1e-12);
}

TEST_CASE("a too-coarse grid fails the step-halving audit") {
  const PulseSchedule s = PulseSchedule::lambda_pulse(0.8, 0.2, PulseSchedule::kPiArea, 1);
  CHECK_THROWS_AS(integrate_schedule(s), ValidationError);
  CHECK_THROWS_AS(gate_from_schedule(s, 0), ValidationError);
}

TEST_CASE("an open loop raises NotHolonomicError carrying the audit") {
  const PulseSchedule s = PulseSchedule::lambda_pulse(
      std::numbers::pi / 2.0, 0.3, PulseSchedule::kPiArea / 2.0);
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS(gate_from_schedule(s, 0), NotHolonomicError);
  try {
    gate_from_schedule(s, 0);
  } catch (const NotHolonomicError& e) {
    CHECK(e.report.cyclicity_defect > kHolonomyDefectTol);
    CHECK(e.report.projected_gate.rows() == 2);
  }
}

TEST_CASE("pulse composition multiplies the logical blocks") {
  const double t1 = 0.6, p1 = -0.9, t2 = 1.7, p2 = 2.1;
  const HolonomicGate g1 =
      gate_from_schedule(PulseSchedule::lambda_pulse(t1, p1), 0);
  const HolonomicGate g2 =
      gate_from_schedule(PulseSchedule::lambda_pulse(t2, p2), 0);
  const Matrix composed = (g2.unitary * g1.unitary).topLeftCorner(2, 2);
  const Matrix expected = analytic_block(t2, p2) * analytic_block(t1, p1);
  CHECK(max_abs(composed - expected) < 2e-6);
}

TEST_CASE("embed_logical_unitary is block diagonal with identity outside") {
  SUBCASE("one site") {
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    const std::array<int, 1> sites{2};
    const HolonomicGate gate = embed_logical_unitary(flip, sites);
    CHECK(gate.arity == 1);
    CHECK(gate.sites[0] == 2);
    CHECK(gate.sites[1] == -1);
    CHECK(std::abs(gate.unitary(0, 1) - 1.0) < kAlgebraTol);
    CHECK(std::abs(gate.unitary(1, 0) - 1.0) < kAlgebraTol);
    CHECK(std::abs(gate.unitary(2, 2) - 1.0) < kAlgebraTol);
    CHECK(std::abs(gate.unitary(0, 0)) < kAlgebraTol);
    CHECK_NOTHROW(validate_gate(gate));
  }
  SUBCASE("two sites, controlled flip") {
    Matrix cnot = Matrix::Identity(4, 4);
    cnot(2, 2) = 0;
    cnot(3, 3) = 0;
    cnot(2, 3) = 1;
    cnot(3, 2) = 1;
    const std::array<int, 2> sites{0, 1};
    const HolonomicGate gate = embed_logical_unitary(cnot, sites);
    CHECK(gate.arity == 2);
    CHECK_NOTHROW(validate_gate(gate));

    auto image = [&](const char* trits) {
      return apply_gate(basis_state(trits), gate).amplitudes;
    };
    CHECK(std::abs(image("10")(4) - 1.0) < kAlgebraTol);  // |10> -> |11>
    CHECK(std::abs(image("11")(3) - 1.0) < kAlgebraTol);  // |11> -> |10>
    CHECK(std::abs(image("00")(0) - 1.0) < kAlgebraTol);
    CHECK(std::abs(image("01")(1) - 1.0) < kAlgebraTol);
    // Anything touching the auxiliary level is left alone.
    CHECK(std::abs(image("20")(6) - 1.0) < kAlgebraTol);
    CHECK(std::abs(image("12")(5) - 1.0) < kAlgebraTol);
  }
}

TEST_CASE("embed_logical_unitary rejects bad input") {
  const std::array<int, 1> one_site{0};
  const std::array<int, 2> two_sites{0, 1};
  Matrix not_unitary(2, 2);
  not_unitary << 1, 1, 0, 1;
  CHECK_THROWS_AS(embed_logical_unitary(not_unitary, one_site),
                  ValidationError);
  CHECK_THROWS_AS(embed_logical_unitary(Matrix::Identity(4, 4), one_site),
                  ValidationError);
  CHECK_THROWS_AS(embed_logical_unitary(Matrix::Identity(2, 2), two_sites),
                  ValidationError);
}

TEST_CASE("local_logical_projector and block preservation defect") {
  const Matrix p1 = local_logical_projector(1);
  CHECK(std::abs(p1(0, 0) - 1.0) == 0.0);
  CHECK(std::abs(p1(1, 1) - 1.0) == 0.0);
  CHECK(std::abs(p1(2, 2)) == 0.0);
  const Matrix p2 = local_logical_projector(2);
  CHECK(p2.diagonal().real().sum() == doctest::Approx(4.0));

  std::mt19937_64 gen(17);
  Matrix logical = test::random_unitary(2, gen);
  const std::array<int, 1> sites{0};
  const HolonomicGate embedded = embed_logical_unitary(logical, sites);
  CHECK(block_preservation_defect(embedded.unitary, 1) < 1e-14);
  // The qutrit shift maps |1> out of the block.
  CHECK(block_preservation_defect(pauli_x(), 1) == doctest::Approx(1.0));
}

TEST_CASE("validate_gate enforces unitarity and block structure") {
  HolonomicGate gate;
  gate.arity = 1;
  gate.unitary = pauli_x();
  gate.sites = {0, -1};
  CHECK_THROWS_AS(validate_gate(gate), ValidationError);  // block leakage

  gate.unitary = Matrix::Identity(3, 3) * 2.0;
  CHECK_THROWS_AS(validate_gate(gate), ValidationError);  // not unitary

  gate.unitary = Matrix::Identity(9, 9);
  CHECK_THROWS_AS(validate_gate(gate), ValidationError);  // dim vs arity

  gate.arity = 3;
  CHECK_THROWS_AS(validate_gate(gate), ValidationError);  // arity range
}

TEST_CASE("apply_gate dispatches on arity") {
  std::mt19937_64 gen(23);
  const QutritState state = test::random_full_state(2, gen);

  const Matrix logical1 = test::random_unitary(2, gen);
  const std::array<int, 1> one{1};
  const HolonomicGate g1 = embed_logical_unitary(logical1, one);
  const QutritState via_gate = apply_gate(state, g1);
  const QutritState direct = apply_one_site(state, g1.unitary, 1);
  CHECK((via_gate.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff() <
        1e-14);

  const Matrix logical2 = test::random_unitary(4, gen);
  const std::array<int, 2> two{1, 0};
  const HolonomicGate g2 = embed_logical_unitary(logical2, two);
  const QutritState via_gate2 = apply_gate(state, g2);
  const QutritState direct2 = apply_two_site(state, g2.unitary, 1, 0);
  CHECK((via_gate2.amplitudes - direct2.amplitudes).cwiseAbs().maxCoeff() <
        1e-14);
}

}  // namespace
}  // namespace holoq
