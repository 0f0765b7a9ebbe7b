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

#ifndef FERMISIM_TESTS_RANDOM_OPS_HPP_
#define FERMISIM_TESTS_RANDOM_OPS_HPP_

#include <random>
#include <span>

#include "fermisim/state.hpp"

namespace fermisim::testing {

// Draws one random operation (single-qubit unitary, controlled unitary,
// conditional phase, basis permutation, two-level mix or register QFT) and
// applies it identically to every state. All states share one layout.
void apply_random_op(std::mt19937_64& rng, std::span<QuantumState* const> states);

Matrix2 random_unitary(std::mt19937_64& rng);

}  // namespace fermisim::testing

#endif  // FERMISIM_TESTS_RANDOM_OPS_HPP_
