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

#ifndef HOLOQ_NOISE_HPP_
#define HOLOQ_NOISE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoq/algebra.hpp"
#include "holoq/holonomy.hpp"
#include "holoq/rng.hpp"
#include "holoq/state.hpp"

namespace holoq {

using Circuit = std::vector<HolonomicGate>;

enum class NoiseMode { None, Symmetric, Asymmetric };

std::string noise_mode_name(NoiseMode mode);

// Exactly one faulty two-site gate per execution: a generalized two-site
// error is inserted directly after it, acting on that gate's sites.
struct NoiseSpec {
  NoiseMode mode = NoiseMode::Symmetric;
  double x_weight = 1.0;  // asymmetric mode: weight per nonzero X exponent
  double z_weight = 1.0;  // asymmetric mode: weight per nonzero Z exponent
  // Weights over the circuit's two-site gates, in circuit order. Empty:
  // uniform. Entries must be nonnegative with a positive total; normalized
  // before use.
  std::vector<double> location_weights;
  std::uint64_t seed = 0;  // master seed when no caller-level seed overrides
};

struct NoiseDraw {
  std::size_t gate_index = 0;  // index into the circuit
  PauliLabel label;
};

std::vector<std::size_t> two_site_gate_indices(const Circuit& circuit);

// Normalized faulty-gate distribution resolved against a circuit.
// gate_indices are circuit indices of the two-site gates, in order.
struct LocationDistribution {
  std::vector<std::size_t> gate_indices;
  std::vector<double> probabilities;
};

// Throws ConfigError when the circuit has no two-site gate, when the weight
// vector length differs from the two-site gate count, or when weights are
// negative or sum to zero.
LocationDistribution location_distribution(const NoiseSpec& spec,
                                           const Circuit& circuit);

// Probability per label index (kLabelCount entries, identity fixed at 0).
// Symmetric: uniform over the 80 error labels. Asymmetric: weight
// x_weight^#X * z_weight^#Z with #X/#Z the number of nonzero X/Z exponents,
// normalized over the error labels.
std::array<double, kLabelCount> error_distribution(const NoiseSpec& spec);

// Draws (gate, label) for one execution; nullopt when mode is None. Draw
// order is gate first, then label. Throws ConfigError when the spec cannot
// be realized on the circuit (no two-site gate, mismatched weight vector).
std::optional<NoiseDraw> sample_noise(const NoiseSpec& spec,
                                      const Circuit& circuit, Substream& rng);

QutritState apply_circuit(const QutritState& initial, const Circuit& circuit);

// Runs the circuit with the drawn error inserted after its gate. A nullopt
// draw reproduces the noiseless run.
QutritState apply_noisy_circuit(const QutritState& initial,
                                const Circuit& circuit,
                                const std::optional<NoiseDraw>& draw);

}  // namespace holoq

#endif  // HOLOQ_NOISE_HPP_
