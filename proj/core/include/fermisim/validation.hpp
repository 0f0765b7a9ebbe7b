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

#ifndef FERMISIM_VALIDATION_HPP_
#define FERMISIM_VALIDATION_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "fermisim/sq_hubbard.hpp"

namespace fermisim::validation {

// One measured quantity with its accepted window [lower, upper].
struct CheckRow {
  std::string name;
  double measured = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRow> rows;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

// Throws InvalidInput for an unknown suite.
SuiteReport run_suite(std::string_view name);

std::string format_report(const SuiteReport& report);

// L2 distance between the Trotterized and exactly propagated states for the
// two-site, two-electron chain (one up electron on site 1, one down on site 2).
double trotter_error_sq(const HubbardParams& params, double time, int steps);

// Same quantity for two particles on a four-site chain in first quantization,
// starting from the antisymmetrized pair {(1, up), (2, down)}.
double trotter_error_fq(const HubbardParams& params, double time, int steps);

}  // namespace fermisim::validation

#endif  // FERMISIM_VALIDATION_HPP_
