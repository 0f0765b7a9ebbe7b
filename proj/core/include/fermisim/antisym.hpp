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

// Reversible antisymmetrization of an ordered n-tuple of qu-words.
//
// Register bank (low qubits first):
//   A  n particle words of w bits; label v in 1..2^w is stored as v-1
//   B  n index words, values 1..n stored as v-1
//   C  n index words
//   S  exchange record of the sort schedule
//   P  exchange-count parity
//
// Pipeline: rank superposition on B, decode ranks into permutations, load
// 1..n into C, sort B carrying A and C (recording exchanges and their parity),
// apply the parity sign, then uncompute B, C, S and P so that only A carries
// the result. Every step after the rank superposition is a per-branch
// reversible rewrite of basis strings.

#ifndef FERMISIM_ANTISYM_HPP_
#define FERMISIM_ANTISYM_HPP_

#include <memory>
#include <span>
#include <vector>

#include "fermisim/sort_network.hpp"
#include "fermisim/state.hpp"

namespace fermisim {

enum class Statistics { kFermi, kBose };

struct QuWordLayout {
  int bits = 1;           ///< label bits per particle (b)
  int particles = 1;      ///< n
  bool spin_bit = false;  ///< one extra low-order spin qubit per word

  int word_width() const { return bits + (spin_bit ? 1 : 0); }
  /// Width of a B or C word, enough for values 1..n.
  int index_width() const;
  int max_label() const { return 1 << word_width(); }
  void validate() const;

  friend bool operator==(const QuWordLayout&, const QuWordLayout&) = default;
};

/// Strictly increasing labels, each in 1..max_label.
struct OrderedConfiguration {
  std::vector<int> labels;
};

struct WeightedConfiguration {
  OrderedConfiguration config;
  Amplitude amplitude{1.0, 0.0};
};

enum class WordGroup { kA, kB, kC };

class RegisterBank {
 public:
  explicit RegisterBank(QuWordLayout words, SortAlgorithm sort = SortAlgorithm::kHeap);

  const QuWordLayout& words() const { return words_; }
  const RegisterLayout& layout() const { return layout_; }
  const SortSchedule& schedule() const { return *schedule_; }
  int particles() const { return words_.particles; }

  /// Layout of the particle words alone. With a spin bit, particle k owns
  /// registers "s<k>" (1 qubit) and "x<k>" (b qubits); otherwise "a<k>".
  RegisterLayout particle_layout() const;

  std::vector<Bits> read(Bits bits, WordGroup group) const;
  Bits write(Bits bits, WordGroup group, std::span<const Bits> values) const;

  const Register& record() const { return layout_.at("S"); }
  const Register& parity() const { return layout_.at("P"); }

  /// True when B, C, S and P are all zero.
  bool ancillas_clear(Bits bits) const;

 private:
  int group_offset(WordGroup group) const;
  int group_width(WordGroup group) const;

  QuWordLayout words_;
  std::shared_ptr<const SortSchedule> schedule_;
  RegisterLayout layout_;
};

/// Loads one ordered tuple (or a normalized superposition of them) into A.
QuantumState prepare_ordered_input(const RegisterBank& bank,
                                   std::span<const WeightedConfiguration> configs,
                                   Backend backend = Backend::kSparse);
QuantumState prepare_ordered_input(const RegisterBank& bank, const OrderedConfiguration& config,
                                   Backend backend = Backend::kSparse);

/// Lehmer-style decoding: element i is the ranks[i]-th smallest value of
/// 1..n not used by elements 0..i-1. ranks[i] must lie in 1..n-i.
std::vector<int> decode_ranks(std::span<const int> ranks);
/// Inverse of decode_ranks.
std::vector<int> encode_ranks(std::span<const int> permutation);

/// B <- equal superposition over rank tuples (1..n) x (1..n-1) x ... x {1},
/// built from single-qubit and controlled rotations. Requires B = 0.
void superpose_ranks(QuantumState& state, const RegisterBank& bank);
/// Adjoint of superpose_ranks.
void unsuperpose_ranks(QuantumState& state, const RegisterBank& bank);

void ranks_to_permutation(QuantumState& state, const RegisterBank& bank);
void permutation_to_ranks(QuantumState& state, const RegisterBank& bank);

/// C <- (1, 2, ..., n). Requires C = 0 on every branch.
void assign_identity(QuantumState& state, const RegisterBank& bank);

/// Per branch: sorts the key words ascending, applies the same exchanges to
/// the co-moved groups, writes the transcript into S and, if requested, XORs
/// the exchange parity into P. Requires S = 0 on every branch.
void sort_with_record(QuantumState& state, const RegisterBank& bank, WordGroup key,
                      std::span<const WordGroup> co_moved, bool accumulate_parity);

/// Negates every branch whose parity bit is set.
void parity_phase(QuantumState& state, const RegisterBank& bank);

/// Full pipeline. Afterwards A holds (1/sqrt(n!)) sum_sigma sgn(sigma)|sigma(Psi)>
/// (sign omitted for bosons) and B, C, S, P are zero on every branch;
/// otherwise InvariantViolation is thrown.
void antisymmetrize(QuantumState& state, const RegisterBank& bank,
                    Statistics statistics = Statistics::kFermi);
/// Exact inverse of antisymmetrize.
void unantisymmetrize(QuantumState& state, const RegisterBank& bank,
                      Statistics statistics = Statistics::kFermi);

/// Drops the ancilla registers. Throws InvariantViolation if any branch has a
/// nonzero ancilla.
QuantumState extract_particles(const QuantumState& state, const RegisterBank& bank);

/// Prepare + antisymmetrize + extract, returning a state on particle_layout().
QuantumState antisymmetrized_state(const RegisterBank& bank,
                                   std::span<const WeightedConfiguration> configs,
                                   Statistics statistics = Statistics::kFermi,
                                   Backend backend = Backend::kSparse);

/// max_b |amplitude(swap_ij(b)) + amplitude(b)| over particle words i and j
/// (0-based), which occupy the lowest n*w qubits of the state. Zero for an
/// antisymmetric state.
double transposition_test(const QuantumState& state, const QuWordLayout& words, int i, int j);
/// Same with a minus sign: zero for a symmetric state.
double symmetric_transposition_test(const QuantumState& state, const QuWordLayout& words,
                                    int i, int j);

}  // namespace fermisim

#endif  // FERMISIM_ANTISYM_HPP_
