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

#ifndef FERMISIM_ERRORS_HPP_
#define FERMISIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fermisim {

/// Raised when a caller violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an internal invariant fails (for example an ancilla that does
/// not return to zero). Indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Global switch for exhaustive checks (bijection tests, antisymmetry checks)
/// whose cost is exponential in the qubit count.
bool validation_mode();
void set_validation_mode(bool enabled);

/// Restores the previous validation mode on destruction.
class ValidationModeScope {
 public:
  explicit ValidationModeScope(bool enabled) : previous_(validation_mode()) {
    set_validation_mode(enabled);
  }
  ~ValidationModeScope() { set_validation_mode(previous_); }
  ValidationModeScope(const ValidationModeScope&) = delete;
  ValidationModeScope& operator=(const ValidationModeScope&) = delete;

 private:
  bool previous_;
};

const char* version();

}  // namespace fermisim

#endif  // FERMISIM_ERRORS_HPP_
