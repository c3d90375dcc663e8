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

#include "holoq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "holoq/errors.hpp"
#include "json.hpp"

namespace holoq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

const json& require(const json& obj, const char* key,
                    const std::string& path) {
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(path + "." + key, "required field is missing");
  }
  return *it;
}

const json* find(const json& obj, const char* key) {
  if (!obj.is_object()) {
    return nullptr;
  }
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    fail(path, "expected a number");
  }
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    fail(path, "expected an integer");
  }
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    fail(path, "expected a string");
  }
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    fail(path, "expected a boolean");
  }
  return v.get<bool>();
}

Complex as_complex_entry(const json& v, const std::string& path) {
  if (v.is_number()) {
    return Complex(v.get<double>(), 0.0);
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  fail(path, "expected a number or a [re, im] pair");
}

Matrix as_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    fail(path, "expected a nonempty array of rows");
  }
  const std::size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) {
    fail(path + "[0]", "expected a nonempty array");
  }
  const std::size_t cols = v[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    std::ostringstream row_path;
    row_path << path << "[" << r << "]";
    if (!v[r].is_array() || v[r].size() != cols) {
      fail(row_path.str(), "rows must all have the same length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      std::ostringstream entry_path;
      entry_path << row_path.str() << "[" << c << "]";
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          as_complex_entry(v[r][c], entry_path.str());
    }
  }
  return m;
}

std::vector<int> as_sites(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    fail(path, "expected a nonempty array of site indices");
  }
  std::vector<int> sites;
  sites.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::ostringstream p;
    p << path << "[" << i << "]";
    sites.push_back(as_int(v[i], p.str()));
  }
  return sites;
}

GateSpec parse_gate(const json& g, const std::string& path) {
  GateSpec spec;
  const std::string type = as_string(require(g, "type", path), path + ".type");
  spec.sites = as_sites(require(g, "sites", path), path + ".sites");
  if (type == "schedule") {
    spec.kind = GateSpec::Kind::Schedule;
    spec.theta = as_number(require(g, "theta", path), path + ".theta");
    if (const json* phi = find(g, "phi")) {
      spec.phi = as_number(*phi, path + ".phi");
    }
    if (const json* area = find(g, "area")) {
      spec.area = as_number(*area, path + ".area");
    }
    if (std::abs(spec.area - PulseSchedule::kPiArea) > 1e-6) {
      fail(path + ".area",
           "schedule gates require the single-loop pulse area (pi)");
    }
    if (const json* steps = find(g, "steps")) {
      spec.steps = as_int(*steps, path + ".steps");
      if (spec.steps < 1) {
        fail(path + ".steps", "must be at least 1");
      }
    }
    if (spec.sites.size() != 1) {
      fail(path + ".sites", "schedule gates act on exactly one site");
    }
  } else if (type == "logical") {
    spec.kind = GateSpec::Kind::Logical;
    const json* name = find(g, "name");
    const json* matrix = find(g, "matrix");
    if ((name == nullptr) == (matrix == nullptr)) {
      fail(path, "logical gates take exactly one of 'name' or 'matrix'");
    }
    if (name != nullptr) {
      spec.name = as_string(*name, path + ".name");
    } else {
      spec.matrix = as_matrix(*matrix, path + ".matrix");
    }
    if (spec.sites.size() != 1 && spec.sites.size() != 2) {
      fail(path + ".sites", "logical gates act on one or two sites");
    }
  } else {
    fail(path + ".type", "expected 'schedule' or 'logical'");
  }
  return spec;
}

// two_site_ordinals: positions of the two-site gates in circuit order, used
// to resolve a fixed "location" (circuit index) into a one-hot weight vector.
NoiseSpec parse_noise(const json* n,
                      const std::vector<std::size_t>& two_site_ordinals) {
  NoiseSpec spec;
  if (n == nullptr) {
    return spec;  // symmetric, uniform location
  }
  const std::string path = "noise";
  if (const json* mode = find(*n, "mode")) {
    const std::string m = as_string(*mode, path + ".mode");
    if (m == "none") {
      spec.mode = NoiseMode::None;
    } else if (m == "symmetric") {
      spec.mode = NoiseMode::Symmetric;
    } else if (m == "asymmetric") {
      spec.mode = NoiseMode::Asymmetric;
    } else {
      fail(path + ".mode", "expected 'none', 'symmetric' or 'asymmetric'");
    }
  }
  if (const json* w = find(*n, "x_weight")) {
    spec.x_weight = as_number(*w, path + ".x_weight");
    if (spec.x_weight < 0.0) {
      fail(path + ".x_weight", "must be nonnegative");
    }
  }
  if (const json* w = find(*n, "z_weight")) {
    spec.z_weight = as_number(*w, path + ".z_weight");
    if (spec.z_weight < 0.0) {
      fail(path + ".z_weight", "must be nonnegative");
    }
  }
  if (const json* s = find(*n, "seed")) {
    spec.seed = as_u64(*s, path + ".seed");
  }
  const json* weights = find(*n, "location_weights");
  const json* loc = find(*n, "location");
  if (weights != nullptr && loc != nullptr) {
    fail(path, "give at most one of 'location_weights' and 'location'");
  }
  if (weights != nullptr) {
    if (!weights->is_array()) {
      fail(path + ".location_weights",
           "expected one weight per two-site gate");
    }
    for (std::size_t i = 0; i < weights->size(); ++i) {
      std::ostringstream p;
      p << path << ".location_weights[" << i << "]";
      const double w = as_number((*weights)[i], p.str());
      if (w < 0.0) {
        fail(p.str(), "must be nonnegative");
      }
      spec.location_weights.push_back(w);
    }
    if (spec.location_weights.size() != two_site_ordinals.size()) {
      std::ostringstream msg;
      msg << "expected " << two_site_ordinals.size()
          << " weights (one per two-site gate), got "
          << spec.location_weights.size();
      fail(path + ".location_weights", msg.str());
    }
  }
  if (loc != nullptr) {
    const int value = as_int(*loc, path + ".location");
    const auto it = std::find(two_site_ordinals.begin(),
                              two_site_ordinals.end(),
                              static_cast<std::size_t>(value >= 0 ? value : 0));
    if (value < 0 || it == two_site_ordinals.end()) {
      fail(path + ".location",
           "must be the circuit index of a two-site gate");
    }
    spec.location_weights.assign(two_site_ordinals.size(), 0.0);
    spec.location_weights[static_cast<std::size_t>(
        it - two_site_ordinals.begin())] = 1.0;
  }
  return spec;
}

ObservableSpec parse_observable(const json& o) {
  ObservableSpec spec;
  const std::string path = "observable";
  const std::string type =
      as_string(require(o, "type", path), path + ".type");
  if (type == "pauli") {
    spec.kind = ObservableSpec::Kind::PauliString;
    spec.pauli = as_string(require(o, "string", path), path + ".string");
  } else if (type == "matrix") {
    spec.kind = ObservableSpec::Kind::LogicalMatrix;
    spec.matrix = as_matrix(require(o, "entries", path), path + ".entries");
  } else {
    fail(path + ".type", "expected 'pauli' or 'matrix'");
  }
  return spec;
}

RunSpec parse_run(const json* r) {
  RunSpec spec;
  if (r == nullptr) {
    return spec;
  }
  const std::string path = "run";
  if (const json* v = find(*r, "trials")) {
    spec.trials = as_u64(*v, path + ".trials");
  }
  if (const json* v = find(*r, "shots")) {
    spec.shots = as_u64(*v, path + ".shots");
  }
  if (const json* v = find(*r, "seed")) {
    spec.seed = as_u64(*v, path + ".seed");
    spec.seed_set = true;
  }
  if (const json* v = find(*r, "threads")) {
    spec.threads = as_int(*v, path + ".threads");
    if (spec.threads < 1) {
      fail(path + ".threads", "must be at least 1");
    }
  }
  if (const json* v = find(*r, "exact")) {
    if (as_bool(*v, path + ".exact")) {
      spec.trials = 0;
      spec.shots = 0;
    }
  }
  if (const json* v = find(*r, "out")) {
    spec.out = as_string(*v, path + ".out");
  }
  if (const json* v = find(*r, "dump_draws")) {
    spec.dump_draws = as_string(*v, path + ".dump_draws");
  }
  return spec;
}

Matrix logical_gate_preset(const std::string& name, const std::string& path) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "X") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  }
  if (name == "Y") {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
  }
  if (name == "Z") {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  }
  if (name == "H") {
    Matrix m(2, 2);
    m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return m;
  }
  if (name == "S") {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = Complex(0, 1);
    return m;
  }
  if (name == "T") {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, std::atan(1.0));  // pi/4
    return m;
  }
  if (name == "CNOT") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
  }
  if (name == "CZ") {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
  }
  if (name == "SWAP") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return m;
  }
  fail(path + ".name", "unknown gate preset '" + name +
                           "' (expected X, Y, Z, H, S, T, CNOT, CZ or SWAP)");
}

void check_sites(const std::vector<int>& sites, int num_sites,
                 const std::string& path) {
  std::set<int> seen;
  for (const int s : sites) {
    if (s < 0 || s >= num_sites) {
      std::ostringstream msg;
      msg << "site " << s << " is outside [0, " << num_sites << ")";
      fail(path, msg.str());
    }
    if (!seen.insert(s).second) {
      fail(path, "sites must be distinct");
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root: expected an object");
  }

  ExperimentConfig cfg;
  const json& system = require(root, "system", "config");
  cfg.num_sites = as_int(require(system, "n", "system"), "system.n");
  if (cfg.num_sites < 1 || cfg.num_sites > kMaxConfigSites) {
    std::ostringstream msg;
    msg << "expected 1 <= n <= " << kMaxConfigSites;
    fail("system.n", msg.str());
  }
  if (const json* init = find(system, "initial")) {
    if (init->is_string()) {
      cfg.initial = as_string(*init, "system.initial");
      if (cfg.initial.size() != static_cast<std::size_t>(cfg.num_sites)) {
        fail("system.initial", "expected one trit character per site");
      }
      for (const char c : cfg.initial) {
        if (c != '0' && c != '1' && c != '2') {
          fail("system.initial", "trit characters must be 0, 1 or 2");
        }
      }
    } else if (init->is_array()) {
      const std::size_t expected = std::size_t{1}
                                   << static_cast<std::size_t>(cfg.num_sites);
      if (init->size() != expected) {
        std::ostringstream msg;
        msg << "expected " << expected
            << " logical amplitudes (2^n entries), got " << init->size();
        fail("system.initial", msg.str());
      }
      for (std::size_t i = 0; i < init->size(); ++i) {
        std::ostringstream p;
        p << "system.initial[" << i << "]";
        cfg.initial_amplitudes.push_back(
            as_complex_entry((*init)[i], p.str()));
      }
    } else {
      fail("system.initial",
           "expected a trit string or an array of logical amplitudes");
    }
  } else {
    cfg.initial.assign(static_cast<std::size_t>(cfg.num_sites), '0');
  }

  const json& circuit = require(root, "circuit", "config");
  if (!circuit.is_array()) {
    fail("circuit", "expected an array of gates");
  }
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    std::ostringstream path;
    path << "circuit[" << i << "]";
    GateSpec spec = parse_gate(circuit[i], path.str());
    check_sites(spec.sites, cfg.num_sites, path.str() + ".sites");
    cfg.gates.push_back(std::move(spec));
  }

  std::vector<std::size_t> two_site_ordinals;
  for (std::size_t i = 0; i < cfg.gates.size(); ++i) {
    if (cfg.gates[i].sites.size() == 2) {
      two_site_ordinals.push_back(i);
    }
  }
  cfg.noise = parse_noise(find(root, "noise"), two_site_ordinals);
  cfg.observable = parse_observable(require(root, "observable", "config"));
  cfg.run = parse_run(find(root, "run"));
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

QutritState build_initial_state(const ExperimentConfig& config) {
  QutritState state;
  if (!config.initial_amplitudes.empty()) {
    Vector logical(
        static_cast<Eigen::Index>(config.initial_amplitudes.size()));
    for (std::size_t i = 0; i < config.initial_amplitudes.size(); ++i) {
      logical(static_cast<Eigen::Index>(i)) = config.initial_amplitudes[i];
    }
    const double n = logical.norm();
    if (std::abs(n - 1.0) > kInitialNormTol) {
      std::ostringstream msg;
      msg << "amplitude list has norm " << n << ", beyond the "
          << kInitialNormTol << " slack around 1";
      fail("system.initial", msg.str());
    }
    state = embed_logical_amplitudes(config.num_sites, logical / n);
  } else {
    state = basis_state(config.initial);
  }
  const double leaked = leak_probability(state);
  if (leaked > kInitialLeakTol) {
    std::ostringstream msg;
    msg << "initial state must reside in the logical block; leaked mass "
        << leaked;
    fail("system.initial", msg.str());
  }
  return state;
}

std::uint64_t effective_seed(const ExperimentConfig& config) {
  return config.run.seed_set ? config.run.seed : config.noise.seed;
}

Circuit build_circuit(const ExperimentConfig& config) {
  Circuit circuit;
  circuit.reserve(config.gates.size());
  for (std::size_t i = 0; i < config.gates.size(); ++i) {
    const GateSpec& spec = config.gates[i];
    std::ostringstream path;
    path << "circuit[" << i << "]";
    if (spec.kind == GateSpec::Kind::Schedule) {
      const PulseSchedule schedule =
          PulseSchedule::lambda_pulse(spec.theta, spec.phi, spec.area,
                                      spec.steps);
      circuit.push_back(gate_from_schedule(schedule, spec.sites[0]));
      continue;
    }
    Matrix logical = spec.matrix;
    if (!spec.name.empty()) {
      logical = logical_gate_preset(spec.name, path.str());
    }
    const auto expected_dim =
        static_cast<Eigen::Index>(std::size_t{1} << spec.sites.size());
    if (logical.rows() != expected_dim || logical.cols() != expected_dim) {
      std::ostringstream msg;
      msg << "expected a " << expected_dim << "x" << expected_dim
          << " logical matrix for " << spec.sites.size()
          << " site(s), got " << logical.rows() << "x" << logical.cols();
      fail(path.str(), msg.str());
    }
    try {
      circuit.push_back(embed_logical_unitary(
          logical, std::span<const int>(spec.sites)));
    } catch (const ValidationError& e) {
      fail(path.str(), e.what());
    }
  }
  return circuit;
}

Observable build_observable(const ExperimentConfig& config) {
  Matrix logical;
  if (config.observable.kind == ObservableSpec::Kind::PauliString) {
    if (config.observable.pauli.size() !=
        static_cast<std::size_t>(config.num_sites)) {
      fail("observable.string", "expected one character per site");
    }
    try {
      logical = logical_pauli_string(config.observable.pauli);
    } catch (const ValidationError& e) {
      fail("observable.string", e.what());
    }
  } else {
    logical = config.observable.matrix;
  }
  try {
    return observable_from_logical(logical, config.num_sites);
  } catch (const ValidationError& e) {
    fail("observable", e.what());
  }
}

RunOptions build_run_options(const ExperimentConfig& config) {
  RunOptions options;
  options.trials = config.run.trials;
  options.shots = config.run.shots;
  options.seed = effective_seed(config);
  options.threads = config.run.threads;
  options.keep_records = true;
  return options;
}

}  // namespace holoq
