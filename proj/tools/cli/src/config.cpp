// Copyright 2026 The fermisim Authors
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

#include "fermisim_cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fermisim/fq_hubbard.hpp"

namespace fermisim::cli {

namespace {

std::string located(const std::string& message, int line, int column) {
  if (line <= 0) return "config: " + message;
  return "config:" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) throw ConfigError(message, 0);
  throw ConfigError(message, mark.line + 1, mark.column + 1);
}

void require_map(const YAML::Node& node, const std::string& what,
                 const std::set<std::string>& allowed) {
  if (!node.IsMap()) fail(node, what + " must be a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
  }
}

YAML::Node required(const YAML::Node& parent, const std::string& key, const std::string& what) {
  const YAML::Node child = parent[key];
  if (!child) fail(parent, what + " is missing required key '" + key + "'");
  return child;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail(node, what + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, what + " has an invalid value '" + node.Scalar() + "'");
  }
}

double finite(const YAML::Node& node, const std::string& what) {
  const auto v = scalar<double>(node, what);
  if (!std::isfinite(v)) fail(node, what + " must be finite");
  return v;
}

int integer(const YAML::Node& node, const std::string& what) {
  return scalar<int>(node, what);
}

std::uint64_t unsigned_integer(const YAML::Node& node, const std::string& what) {
  const std::string text = scalar<std::string>(node, what);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    fail(node, what + " must be a non-negative integer");
  }
  return scalar<std::uint64_t>(node, what);
}

Spin parse_spin(const YAML::Node& node) {
  const auto s = scalar<std::string>(node, "spin");
  if (s == "up") return Spin::kUp;
  if (s == "down") return Spin::kDown;
  fail(node, "spin must be 'up' or 'down', got '" + s + "'");
}

Observable parse_observable(const YAML::Node& node) {
  const auto s = scalar<std::string>(node, "observable");
  for (Observable o : {Observable::kDensity, Observable::kDoubleOccupancy, Observable::kEnergy,
                       Observable::kMomentum}) {
    if (to_string(o) == s) return o;
  }
  fail(node, "unknown observable '" + s + "' (density, double_occupancy, energy, momentum)");
}

void check_semantics(const YAML::Node& root, const RunConfig& c) {
  const int n = c.particles();
  if (c.formalism == Formalism::kSecond && c.mode == Statistics::kBose) {
    fail(root["mode"], "bose statistics are only available in the first-quantized formalism");
  }
  if (c.formalism == Formalism::kFirst) {
    if (c.sites < 2 || (c.sites & (c.sites - 1)) != 0) {
      fail(root["lattice"], "first-quantized runs need a power-of-two site count >= 2");
    }
    if (n < 1) fail(root["particles"], "first-quantized runs need at least one particle");
  }
  if (n > 2 * c.sites) fail(root["particles"], "more particles than spin orbitals");
  std::set<Orbital> seen;
  for (const Orbital& o : c.initial_orbitals()) {
    if (o.site < 1 || o.site > c.sites) {
      fail(root["particles"], "site " + std::to_string(o.site) + " outside 1.." +
                                  std::to_string(c.sites));
    }
    if (!seen.insert(o).second) fail(root["particles"], "an orbital is occupied twice");
  }
  for (Observable o : c.observables) {
    if (o == Observable::kMomentum && c.formalism != Formalism::kFirst) {
      fail(root["observables"], "momentum is only available in the first-quantized formalism");
    }
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, int column)
    : InvalidInput(located(message, line, column)), line_(line), column_(column) {}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::kDensity:
      return "density";
    case Observable::kDoubleOccupancy:
      return "double_occupancy";
    case Observable::kEnergy:
      return "energy";
    case Observable::kMomentum:
      return "momentum";
  }
  return "unknown";
}

std::vector<Orbital> RunConfig::initial_orbitals() const {
  if (!labels.empty()) {
    std::vector<Orbital> out;
    for (int l : labels) out.push_back(FirstQuantizedLayout::orbital(l));
    return out;
  }
  return occupied;
}

int RunConfig::particles() const {
  return static_cast<int>(labels.empty() ? occupied.size() : labels.size());
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  require_map(root, "config", {"formalism", "lattice", "params", "particles", "plan",
                               "observables", "sampling", "backend", "mode"});
  RunConfig c;

  const YAML::Node formalism = required(root, "formalism", "config");
  const auto f = scalar<std::string>(formalism, "formalism");
  if (f == "first") {
    c.formalism = Formalism::kFirst;
  } else if (f == "second") {
    c.formalism = Formalism::kSecond;
  } else {
    fail(formalism, "formalism must be 'first' or 'second', got '" + f + "'");
  }

  const YAML::Node lattice = required(root, "lattice", "config");
  require_map(lattice, "lattice", {"sites", "boundary"});
  c.sites = integer(required(lattice, "sites", "lattice"), "lattice.sites");
  if (c.sites < 1) fail(lattice["sites"], "lattice.sites must be positive");
  if (lattice["boundary"]) {
    c.boundary = scalar<std::string>(lattice["boundary"], "lattice.boundary");
    if (c.boundary != "open") fail(lattice["boundary"], "only 'open' boundaries are supported");
  }

  const YAML::Node params = required(root, "params", "config");
  require_map(params, "params", {"v0", "t0"});
  c.params.v0 = finite(required(params, "v0", "params"), "params.v0");
  c.params.t0 = finite(required(params, "t0", "params"), "params.t0");

  const YAML::Node particles = required(root, "particles", "config");
  require_map(particles, "particles", {"occupied", "labels"});
  if (particles["occupied"] && particles["labels"]) {
    fail(particles, "particles takes either 'occupied' or 'labels', not both");
  }
  if (const YAML::Node occ = particles["occupied"]) {
    if (!occ.IsSequence()) fail(occ, "particles.occupied must be a list of [site, spin]");
    for (const auto& item : occ) {
      if (!item.IsSequence() || item.size() != 2) fail(item, "each orbital is [site, spin]");
      c.occupied.push_back({integer(item[0], "site"), parse_spin(item[1])});
    }
  } else if (const YAML::Node lab = particles["labels"]) {
    if (!lab.IsSequence()) fail(lab, "particles.labels must be a list of integers");
    for (const auto& item : lab) {
      const int v = integer(item, "label");
      if (v < 1) fail(item, "labels start at 1");
      if (!c.labels.empty() && v <= c.labels.back()) {
        fail(item, "labels must be strictly increasing");
      }
      c.labels.push_back(v);
    }
  } else {
    fail(particles, "particles needs 'occupied' or 'labels'");
  }

  const YAML::Node plan = required(root, "plan", "config");
  require_map(plan, "plan", {"time", "steps"});
  c.plan.time = finite(required(plan, "time", "plan"), "plan.time");
  c.plan.steps = integer(required(plan, "steps", "plan"), "plan.steps");
  if (c.plan.time < 0) fail(plan["time"], "plan.time must be non-negative");
  if (c.plan.steps < 1) fail(plan["steps"], "plan.steps must be at least 1");

  if (const YAML::Node obs = root["observables"]) {
    if (!obs.IsSequence()) fail(obs, "observables must be a list");
    for (const auto& item : obs) c.observables.push_back(parse_observable(item));
  }

  if (const YAML::Node sampling = root["sampling"]) {
    require_map(sampling, "sampling", {"trials", "seed", "epsilon"});
    if (sampling["trials"]) c.sampling.trials = unsigned_integer(sampling["trials"], "sampling.trials");
    if (sampling["seed"]) c.sampling.seed = unsigned_integer(sampling["seed"], "sampling.seed");
    if (sampling["epsilon"]) {
      c.sampling.epsilon = finite(sampling["epsilon"], "sampling.epsilon");
      if (!(c.sampling.epsilon > 0 && c.sampling.epsilon < 1)) {
        fail(sampling["epsilon"], "sampling.epsilon must lie in (0, 1)");
      }
    }
  }

  if (const YAML::Node backend = root["backend"]) {
    try {
      c.backend = parse_backend(scalar<std::string>(backend, "backend"));
    } catch (const InvalidInput& e) {
      fail(backend, e.what());
    }
  }

  if (const YAML::Node mode = root["mode"]) {
    const auto m = scalar<std::string>(mode, "mode");
    if (m == "fermi") {
      c.mode = Statistics::kFermi;
    } else if (m == "bose") {
      c.mode = Statistics::kBose;
    } else {
      fail(mode, "mode must be 'fermi' or 'bose', got '" + m + "'");
    }
  }

  check_semantics(root, c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "formalism" << YAML::Value
      << (c.formalism == Formalism::kFirst ? "first" : "second");
  out << YAML::Key << "lattice" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "sites" << YAML::Value << c.sites;
  out << YAML::Key << "boundary" << YAML::Value << c.boundary;
  out << YAML::EndMap;
  out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v0" << YAML::Value << c.params.v0;
  out << YAML::Key << "t0" << YAML::Value << c.params.t0;
  out << YAML::EndMap;
  out << YAML::Key << "particles" << YAML::Value << YAML::BeginMap;
  if (!c.labels.empty()) {
    out << YAML::Key << "labels" << YAML::Value << YAML::Flow << c.labels;
  } else {
    out << YAML::Key << "occupied" << YAML::Value << YAML::BeginSeq;
    for (const Orbital& o : c.occupied) {
      out << YAML::Flow << YAML::BeginSeq << o.site
          << (o.spin == Spin::kUp ? "up" : "down") << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  out << YAML::Key << "plan" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "time" << YAML::Value << c.plan.time;
  out << YAML::Key << "steps" << YAML::Value << c.plan.steps;
  out << YAML::EndMap;
  out << YAML::Key << "observables" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Observable o : c.observables) out << to_string(o);
  out << YAML::EndSeq;
  out << YAML::Key << "sampling" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "trials" << YAML::Value << c.sampling.trials;
  out << YAML::Key << "seed" << YAML::Value << c.sampling.seed;
  out << YAML::Key << "epsilon" << YAML::Value << c.sampling.epsilon;
  out << YAML::EndMap;
  out << YAML::Key << "backend" << YAML::Value << std::string(fermisim::to_string(c.backend));
  out << YAML::Key << "mode" << YAML::Value << (c.mode == Statistics::kFermi ? "fermi" : "bose");
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fermisim::cli
