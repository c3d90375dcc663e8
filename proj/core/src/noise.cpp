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

#include "holoq/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "holoq/errors.hpp"

namespace holoq {

std::string noise_mode_name(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::None: return "none";
    case NoiseMode::Symmetric: return "symmetric";
    case NoiseMode::Asymmetric: return "asymmetric";
  }
  return "?";
}

std::vector<std::size_t> two_site_gate_indices(const Circuit& circuit) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (circuit[i].arity == 2) {
      indices.push_back(i);
    }
  }
  return indices;
}

std::array<double, kLabelCount> error_distribution(const NoiseSpec& spec) {
  std::array<double, kLabelCount> probs{};
  if (spec.mode == NoiseMode::None) {
    return probs;
  }
  if (spec.mode == NoiseMode::Symmetric) {
    for (int i = 0; i < kLabelCount; ++i) {
      probs[static_cast<std::size_t>(i)] =
          label_from_index(i).is_identity() ? 0.0 : 1.0 / kErrorLabelCount;
    }
    return probs;
  }
  if (spec.x_weight < 0.0 || spec.z_weight < 0.0) {
    throw std::invalid_argument("noise weights must be nonnegative");
  }
  double total = 0.0;
  for (int i = 0; i < kLabelCount; ++i) {
    const PauliLabel label = label_from_index(i);
    if (label.is_identity()) {
      continue;
    }
    const int num_x = (label.xa != 0 ? 1 : 0) + (label.xb != 0 ? 1 : 0);
    const int num_z = (label.za != 0 ? 1 : 0) + (label.zb != 0 ? 1 : 0);
    const double w =
        std::pow(spec.x_weight, num_x) * std::pow(spec.z_weight, num_z);
    probs[static_cast<std::size_t>(i)] = w;
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument(
        "asymmetric noise weights assign zero mass to every error label");
  }
  for (double& p : probs) {
    p /= total;
  }
  return probs;
}

LocationDistribution location_distribution(const NoiseSpec& spec,
                                           const Circuit& circuit) {
  LocationDistribution dist;
  dist.gate_indices = two_site_gate_indices(circuit);
  if (dist.gate_indices.empty()) {
    throw ConfigError(
        "noise requires a two-site gate in the circuit; none present");
  }
  const std::size_t count = dist.gate_indices.size();
  if (spec.location_weights.empty()) {
    dist.probabilities.assign(count, 1.0 / static_cast<double>(count));
    return dist;
  }
  if (spec.location_weights.size() != count) {
    std::ostringstream msg;
    msg << "noise location_weights has " << spec.location_weights.size()
        << " entries but the circuit has " << count << " two-site gates";
    throw ConfigError(msg.str());
  }
  double total = 0.0;
  for (double w : spec.location_weights) {
    if (w < 0.0) {
      throw ConfigError("noise location_weights must be nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw ConfigError("noise location_weights must have positive total");
  }
  dist.probabilities.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    dist.probabilities[i] = spec.location_weights[i] / total;
  }
  return dist;
}

std::optional<NoiseDraw> sample_noise(const NoiseSpec& spec,
                                      const Circuit& circuit, Substream& rng) {
  if (spec.mode == NoiseMode::None) {
    return std::nullopt;
  }
  const LocationDistribution locations = location_distribution(spec, circuit);
  std::vector<double> location_cdf(locations.probabilities.size());
  std::partial_sum(locations.probabilities.begin(),
                   locations.probabilities.end(), location_cdf.begin());
  NoiseDraw draw;
  draw.gate_index = locations.gate_indices[rng.sample_cdf(location_cdf)];

  const std::array<double, kLabelCount> probs = error_distribution(spec);
  std::array<double, kLabelCount> cumulative{};
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const std::size_t index = rng.sample_cdf(cumulative);
  draw.label = label_from_index(static_cast<int>(index));
  return draw;
}

QutritState apply_circuit(const QutritState& initial, const Circuit& circuit) {
  QutritState state = initial;
  for (const HolonomicGate& gate : circuit) {
    state = apply_gate(state, gate);
  }
  return state;
}

QutritState apply_noisy_circuit(const QutritState& initial,
                                const Circuit& circuit,
                                const std::optional<NoiseDraw>& draw) {
  if (!draw.has_value()) {
    return apply_circuit(initial, circuit);
  }
  if (draw->gate_index >= circuit.size()) {
    throw std::invalid_argument("noise draw points outside the circuit");
  }
  const HolonomicGate& faulty = circuit[draw->gate_index];
  if (faulty.arity != 2) {
    throw std::invalid_argument("noise draw points at a one-site gate");
  }
  QutritState state = initial;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    state = apply_gate(state, circuit[i]);
    if (i == draw->gate_index) {
      state = apply_two_site(state, build_error_operator(draw->label),
                             faulty.sites[0], faulty.sites[1]);
    }
  }
  return state;
}

}  // namespace holoq
