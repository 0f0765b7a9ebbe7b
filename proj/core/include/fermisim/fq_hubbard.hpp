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

// First-quantized Hubbard chain: one qu-word per particle holding its site
// (b = log2 m bits) and spin (1 bit). The kinetic term of each particle is
// split into two block-diagonal parts, T1 = h(1,2) + h(3,4) + ... and
// T2 = h(2,3) + h(4,5) + ..., each applied by relabelling sites as
// (block, position-in-block) and rotating the position bit.

#ifndef FERMISIM_FQ_HUBBARD_HPP_
#define FERMISIM_FQ_HUBBARD_HPP_

#include <span>
#include <utility>
#include <vector>

#include "fermisim/antisym.hpp"
#include "fermisim/op_tally.hpp"
#include "fermisim/sq_hubbard.hpp"
#include "fermisim/state.hpp"

namespace fermisim {

/// n particles on an open chain of m = 2^b sites. Particle k's word is the
/// single-particle label lambda(x, sigma) = 2(x-1) + sigma + 1 stored as
/// lambda - 1: spin in the low bit, x - 1 in the b bits above it.
class FirstQuantizedLayout {
 public:
  FirstQuantizedLayout(int sites, int particles);

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  int position_bits() const { return position_bits_; }
  int word_width() const { return position_bits_ + 1; }
  int num_qubits() const { return particles_ * word_width(); }

  static int label(const Orbital& orbital);
  static Orbital orbital(int label);

  QuWordLayout word_layout() const { return {position_bits_, particles_, true}; }
  RegisterBank register_bank() const { return RegisterBank(word_layout()); }
  /// Registers s0, x0, s1, x1, ... in that qubit order.
  RegisterLayout register_layout() const;

  int position_offset(int particle) const { return particle * word_width() + 1; }
  int spin_offset(int particle) const { return particle * word_width(); }

  friend bool operator==(const FirstQuantizedLayout&, const FirstQuantizedLayout&) = default;

 private:
  int sites_;
  int particles_;
  int position_bits_;
};

/// Disjoint bond sets of the open chain.
struct KineticSplit {
  std::vector<std::pair<int, int>> t1;  ///< (1,2), (3,4), ...
  std::vector<std::pair<int, int>> t2;  ///< (2,3), (4,5), ...

  static KineticSplit for_chain(int sites);
};

/// Block label and position inside the block, both as in the formulas
/// (blocks 1-based, positions 0 or 1).
struct BlockCoordinates {
  int block = 0;
  int position = 0;

  friend bool operator==(const BlockCoordinates&, const BlockCoordinates&) = default;
};

/// Site x -> ((x + 1) div 2, x mod 2).
BlockCoordinates t1_block_coordinates(int site);
/// Site x -> (x div 2, (x + 1) mod 2). Sites 1 and m (for even m) sit in
/// blocks of their own.
BlockCoordinates t2_block_coordinates(int site);

/// Builds the antisymmetrized (or symmetrized) initial state for the given
/// occupied orbitals through the reversible pipeline.
QuantumState prepare_first_quantized(const FirstQuantizedLayout& layout,
                                     std::span<const Orbital> occupied,
                                     Statistics statistics = Statistics::kFermi,
                                     Backend backend = Backend::kDense);

/// Phase exp(-i V0 dt) on components where a pair of particles shares a site
/// with opposite spins, once per unordered pair.
void evolve_potential_fq(QuantumState& state, const FirstQuantizedLayout& layout,
                         const HubbardParams& params, double dt);

/// exp(-i dt T1) followed by exp(-i dt T2) on one particle's position.
void evolve_kinetic_particle(QuantumState& state, const FirstQuantizedLayout& layout,
                             int particle, const HubbardParams& params, double dt);

/// Each step: potential, then the kinetic sweep for particles 0..n-1.
/// In validation mode the input must pass the transposition test matching
/// `statistics`.
void trotter_evolve_fq(QuantumState& state, const FirstQuantizedLayout& layout,
                       const HubbardParams& params, const TrotterPlan& plan,
                       Statistics statistics = Statistics::kFermi);

/// Elementary-operation tally. The site relabelling is costed as a reversible
/// constant adder on b bits (a k-controlled NOT for k = 0..b-1, charged k + 1
/// operations), once forward and once backward per block-diagonal part.
OpTally op_count_fq(const FirstQuantizedLayout& layout, const TrotterPlan& plan);
/// Kinetic-only part of op_count_fq for one particle and one step.
OpTally kinetic_op_count(const FirstQuantizedLayout& layout);

}  // namespace fermisim

#endif  // FERMISIM_FQ_HUBBARD_HPP_
