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

#ifndef HOLOQ_HOLONOMY_HPP_
#define HOLOQ_HOLONOMY_HPP_

#include <array>
#include <span>
#include <vector>

#include "holoq/algebra.hpp"
#include "holoq/errors.hpp"
#include "holoq/state.hpp"

namespace holoq {

// Gate acceptance thresholds.
inline constexpr double kGateUnitaryTol = 1e-12;
inline constexpr double kBlockPreservationTol = 1e-10;
inline constexpr double kHolonomyDefectTol = 1e-6;
inline constexpr double kIntegratorConvergenceTol = 1e-8;
inline constexpr int kDefaultPulseSteps = 2000;

// A unitary on 1 or 2 qutrit sites that maps the local logical block to
// itself and its orthocomplement to itself.
struct HolonomicGate {
  int arity = 1;                     // 1 or 2
  Matrix unitary;                    // 3x3 or 9x9
  std::array<int, 2> sites{0, -1};   // sites[1] is -1 for arity 1
};

// Resonant single-loop pulse on one Lambda-type qutrit: the couplings
// |0><2| and |1><2| carry relative weights set by (theta, phi), the |0>-|1>
// transition is absent, and the envelope integrates to `area`. Envelope
// samples live on a uniform grid of 4*steps+1 points over [0, duration] so
// the integrator can index full, half and quarter steps exactly.
struct PulseSchedule {
  double theta = 0.0;
  double phi = 0.0;
  double area = 0.0;
  double duration = 1.0;
  int steps = kDefaultPulseSteps;
  std::vector<double> envelope;

  // Sine-squared envelope with the given pulse area (pi by default: the
  // single-loop condition).
  static PulseSchedule lambda_pulse(double theta, double phi,
                                    double area = kPiArea,
                                    int steps = kDefaultPulseSteps);

  // Time-independent coupling structure; H(t) = envelope(t) * coupling().
  Matrix coupling() const;

  // Consistency checks: positive duration/steps, sample count, quadrature of
  // the envelope within 1e-6 of `area`. Throws ValidationError.
  void validate() const;

  static constexpr double kPiArea = 3.14159265358979323846;
};

// Numerical audit of one schedule: does the logical span return to itself
// after one period, and do the evolved frame vectors ever acquire dynamical
// phase.
struct HolonomyReport {
  double cyclicity_defect = 0.0;            // ||P_S(tau) - P_S(0)||_max
  double parallel_transport_residual = 0.0; // max_t |<phi_mu|H(t)|phi_nu>|
  Matrix projected_gate;                    // final unitary on span{|0>,|1>}
};

class NotHolonomicError : public ValidationError {
 public:
  NotHolonomicError(const std::string& what, HolonomyReport report)
      : ValidationError(what), report(std::move(report)) {}
  HolonomyReport report;
};

// Integrate the Schrodinger equation for the basis frame across one period
// and report the holonomy conditions. Runs the grid twice (h and h/2);
// throws ValidationError when the two results differ by more than
// kIntegratorConvergenceTol.
HolonomyReport integrate_schedule(const PulseSchedule& schedule);

// Full 3x3 gate produced by a schedule, bound to one site. Defects are
// measured on the raw propagator; the stored gate is that propagator snapped
// to the nearest block-diagonal unitary so HolonomicGate invariants hold at
// machine precision. Throws NotHolonomicError when either defect exceeds
// kHolonomyDefectTol.
HolonomicGate gate_from_schedule(const PulseSchedule& schedule, int site);

// Block-diagonal embedding of a 2^k x 2^k logical unitary into 3^k, identity
// on the orthocomplement. Throws ValidationError when the input fails
// ||U^dag U - I||_max <= 1e-10; otherwise the input is snapped to the
// nearest unitary so the embedded gate meets kGateUnitaryTol.
HolonomicGate embed_logical_unitary(const Matrix& logical_unitary,
                                    std::span<const int> sites);

// Diagonal projector onto the logical block of a k-site patch.
Matrix local_logical_projector(int k);

// ||(I - P) U P||_max for the k-site logical projector P.
double block_preservation_defect(const Matrix& unitary, int k);

// Unitarity + block preservation. Throws ValidationError.
void validate_gate(const HolonomicGate& gate);

QutritState apply_gate(const QutritState& state, const HolonomicGate& gate);

}  // namespace holoq

#endif  // HOLOQ_HOLONOMY_HPP_
