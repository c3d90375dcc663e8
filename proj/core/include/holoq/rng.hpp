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

#ifndef HOLOQ_RNG_HPP_
#define HOLOQ_RNG_HPP_

#include <algorithm>
#include <cstdint>
#include <span>

namespace holoq {

// Counter-based random substream: the state is a pure function of
// (master seed, stream index), so trial i produces the same draws no matter
// which thread runs it or in which order. Core step is the splitmix64 mixer.
class Substream {
 public:
  Substream(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ stream);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Index into a discrete distribution given its cumulative sums
  // (last entry ~ 1; draws beyond it clamp to the final index).
  std::size_t sample_cdf(std::span<const double> cumulative) {
    const double u = next_double();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      return cumulative.empty() ? 0 : cumulative.size() - 1;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace holoq

#endif  // HOLOQ_RNG_HPP_
