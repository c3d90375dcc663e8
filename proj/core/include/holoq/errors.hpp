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

#ifndef HOLOQ_ERRORS_HPP_
#define HOLOQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace holoq {

// Bad experiment configuration (file, schema or field contents). CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical validation failed (non-unitary input, gate outside the
// holonomy thresholds, integrator not converged, ...). CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The rescaled estimator is undefined: essentially no probability mass
// survived the logical projection. CLI exit code 3.
class AllLeakedError : public std::runtime_error {
 public:
  explicit AllLeakedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace holoq

#endif  // HOLOQ_ERRORS_HPP_
