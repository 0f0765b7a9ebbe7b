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

#ifndef FERMISIM_CLI_RUN_HPP_
#define FERMISIM_CLI_RUN_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fermisim/sort_network.hpp"
#include "fermisim_cli/config.hpp"

namespace fermisim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

struct EvolveOverrides {
  std::optional<Backend> backend;
  std::optional<std::uint64_t> seed;
};

// One line of the tabular output. Absent values are written as empty cells.
struct TableRow {
  std::string observable;
  int index = 0;
  std::optional<double> exact;
  std::optional<double> sampled;
  std::optional<double> std_error;
};

struct EvolveResult {
  nlohmann::json document;
  std::vector<TableRow> table;
};

RunConfig apply_overrides(RunConfig config, const EvolveOverrides& overrides);

EvolveResult run_evolve(const RunConfig& config);

// The document without its wall-time entry.
nlohmann::json result_payload(const nlohmann::json& document);

std::string render_csv(const std::vector<TableRow>& rows);

struct AntisymRequest {
  std::vector<int> labels;
  Statistics mode = Statistics::kFermi;
  int bits = 0;  ///< 0 picks the narrowest word holding the largest label
  SortAlgorithm sort = SortAlgorithm::kHeap;
};

nlohmann::json run_antisym(const AntisymRequest& request);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fermisim::cli

#endif  // FERMISIM_CLI_RUN_HPP_
