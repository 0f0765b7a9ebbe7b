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

#ifndef FERMISIM_CLI_CONFIG_HPP_
#define FERMISIM_CLI_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fermisim/antisym.hpp"
#include "fermisim/errors.hpp"
#include "fermisim/observables.hpp"
#include "fermisim/sq_hubbard.hpp"
#include "fermisim/state.hpp"

namespace fermisim::cli {

// A rejected configuration; line is 1-based, 0 when unknown.
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& message, int line, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class Observable { kDensity, kDoubleOccupancy, kEnergy, kMomentum };

std::string to_string(Observable o);

struct SamplingConfig {
  std::uint64_t trials = 0;  ///< 0 disables sampled estimates
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  friend bool operator==(const SamplingConfig&, const SamplingConfig&) = default;
};

struct RunConfig {
  Formalism formalism = Formalism::kSecond;
  int sites = 2;
  std::string boundary = "open";
  HubbardParams params;
  // Exactly one of these describes the initial configuration.
  std::vector<Orbital> occupied;
  std::vector<int> labels;  ///< 2(site-1) + spin + 1
  TrotterPlan plan;
  std::vector<Observable> observables;
  SamplingConfig sampling;
  Backend backend = Backend::kDense;
  Statistics mode = Statistics::kFermi;

  std::vector<Orbital> initial_orbitals() const;
  int particles() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace fermisim::cli

#endif  // FERMISIM_CLI_CONFIG_HPP_
