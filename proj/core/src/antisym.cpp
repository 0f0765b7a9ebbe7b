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

#include "fermisim/antisym.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fermisim/errors.hpp"

namespace fermisim {

namespace {

using Words = std::vector<Bits>;

void apply_exchanges(Words& words, const std::vector<Exchange>& exchanges, bool backwards) {
  if (backwards) {
    for (auto it = exchanges.rbegin(); it != exchanges.rend(); ++it) {
      std::swap(words[static_cast<std::size_t>(it->first)],
                words[static_cast<std::size_t>(it->second)]);
    }
  } else {
    for (const auto& [i, j] : exchanges) {
      std::swap(words[static_cast<std::size_t>(i)], words[static_cast<std::size_t>(j)]);
    }
  }
}

// (0, 1, ..., n-1): the encoded tuple 1..n.
Words identity_words(int n) {
  Words w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = static_cast<Bits>(i);
  return w;
}

Words inverse_permutation(const Words& perm) {
  Words inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size()) throw InvariantViolation("register does not hold a permutation");
    inv[perm[i]] = static_cast<Bits>(i);
  }
  return inv;
}

Words xor_words(Words a, const Words& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

void check_layout(const QuantumState& state, const RegisterBank& bank) {
  if (!(state.layout() == bank.layout())) {
    throw InvalidInput("state layout does not match the register bank");
  }
}

void require_each_branch(const QuantumState& state, const std::function<bool(Bits)>& ok,
                         const std::string& message) {
  state.for_each_entry([&](Bits b, Amplitude) {
    if (!ok(b)) throw InvalidInput(message);
  });
}

// Uniform superposition over encoded values 0..count-1 of a word whose bits
// start at `offset`, assuming the word is zero. Bits are fixed from the most
// significant down; each rotation is conditioned on the already-fixed prefix.
void prepare_uniform(QuantumState& state, int offset, int width, int count, bool adjoint) {
  struct Rotation {
    std::vector<Control> controls;
    int target;
    Matrix2 u;
  };
  std::vector<Rotation> circuit;
  for (int j = width - 1; j >= 0; --j) {
    const Bits block = Bits{1} << (j + 1);
    for (Bits prefix = 0; (prefix * block) < static_cast<Bits>(count); ++prefix) {
      const Bits lo = prefix * block;
      const Bits hi = std::min<Bits>(static_cast<Bits>(count), lo + block);
      const Bits total = hi - lo;
      const Bits mid = lo + (block >> 1);
      const Bits ones = hi > mid ? hi - mid : 0;
      if (ones == 0) continue;
      const double c0 = std::sqrt(static_cast<double>(total - ones) / static_cast<double>(total));
      const double c1 = std::sqrt(static_cast<double>(ones) / static_cast<double>(total));
      Rotation r{{}, offset + j, gates::real_rotation(c0, c1)};
      for (int k = j + 1; k < width; ++k) {
        r.controls.push_back(Control{offset + k, ((prefix >> (k - j - 1)) & 1U) != 0});
      }
      circuit.push_back(std::move(r));
    }
  }
  if (adjoint) {
    std::reverse(circuit.begin(), circuit.end());
    for (Rotation& r : circuit) r.u = gates::adjoint(r.u);
  }
  for (const Rotation& r : circuit) state.apply_controlled_unitary(r.controls, r.target, r.u);
}

}  // namespace

// ---------------------------------------------------------------------------
// Layout

int QuWordLayout::index_width() const {
  return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(particles - 1))));
}

void QuWordLayout::validate() const {
  if (particles < 1) throw InvalidInput("need at least one particle");
  if (bits < 0) throw InvalidInput("qu-word bit count must be non-negative");
  if (word_width() < 1) throw InvalidInput("qu-word must have at least one bit");
  if (word_width() > 30) throw InvalidInput("qu-word wider than 30 bits");
  if (particles > max_label()) {
    throw InvalidInput(std::to_string(particles) + " particles cannot have distinct labels in 1.." +
                       std::to_string(max_label()));
  }
}

RegisterBank::RegisterBank(QuWordLayout words, SortAlgorithm sort) : words_(words) {
  words_.validate();
  schedule_ = make_sort_schedule(sort, words_.particles);
  layout_ = particle_layout();
  layout_.append("B", words_.particles * words_.index_width());
  layout_.append("C", words_.particles * words_.index_width());
  layout_.append("S", schedule_->record_bits());
  layout_.append("P", 1);
}

RegisterLayout RegisterBank::particle_layout() const {
  RegisterLayout layout;
  for (int k = 0; k < words_.particles; ++k) {
    if (words_.spin_bit) {
      layout.append("s" + std::to_string(k), 1);
      layout.append("x" + std::to_string(k), words_.bits);
    } else {
      layout.append("a" + std::to_string(k), words_.bits);
    }
  }
  return layout;
}

int RegisterBank::group_offset(WordGroup group) const {
  switch (group) {
    case WordGroup::kA:
      return 0;
    case WordGroup::kB:
      return layout_.at("B").offset;
    case WordGroup::kC:
      return layout_.at("C").offset;
  }
  return 0;
}

int RegisterBank::group_width(WordGroup group) const {
  return group == WordGroup::kA ? words_.word_width() : words_.index_width();
}

std::vector<Bits> RegisterBank::read(Bits bits, WordGroup group) const {
  const int offset = group_offset(group);
  const int width = group_width(group);
  Words out(static_cast<std::size_t>(words_.particles));
  for (int k = 0; k < words_.particles; ++k) {
    out[static_cast<std::size_t>(k)] = read_field(bits, offset + k * width, width);
  }
  return out;
}

Bits RegisterBank::write(Bits bits, WordGroup group, std::span<const Bits> values) const {
  const int offset = group_offset(group);
  const int width = group_width(group);
  for (int k = 0; k < words_.particles; ++k) {
    bits = write_field(bits, offset + k * width, width, values[static_cast<std::size_t>(k)]);
  }
  return bits;
}

bool RegisterBank::ancillas_clear(Bits bits) const {
  const Bits ancilla = layout_.at("B").mask() | layout_.at("C").mask() | record().mask() |
                       parity().mask();
  return (bits & ancilla) == 0;
}

// ---------------------------------------------------------------------------
// Step I

QuantumState prepare_ordered_input(const RegisterBank& bank,
                                   std::span<const WeightedConfiguration> configs,
                                   Backend backend) {
  if (configs.empty()) throw InvalidInput("no input configuration given");
  const QuWordLayout& words = bank.words();
  std::vector<BasisAmplitude> amplitudes;
  for (const WeightedConfiguration& wc : configs) {
    const auto& labels = wc.config.labels;
    if (static_cast<int>(labels.size()) != words.particles) {
      throw InvalidInput("configuration has " + std::to_string(labels.size()) +
                         " labels, expected " + std::to_string(words.particles));
    }
    Words encoded;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 1 || labels[i] > words.max_label()) {
        throw InvalidInput("label " + std::to_string(labels[i]) + " outside 1.." +
                           std::to_string(words.max_label()));
      }
      if (i > 0 && labels[i] <= labels[i - 1]) {
        throw InvalidInput("labels must be strictly increasing (duplicates are not allowed)");
      }
      encoded.push_back(static_cast<Bits>(labels[i] - 1));
    }
    amplitudes.push_back({bank.write(0, WordGroup::kA, encoded), wc.amplitude});
  }
  return QuantumState::from_amplitudes(bank.layout(), amplitudes, backend);
}

QuantumState prepare_ordered_input(const RegisterBank& bank, const OrderedConfiguration& config,
                                   Backend backend) {
  const WeightedConfiguration wc{config, {1.0, 0.0}};
  return prepare_ordered_input(bank, std::span(&wc, 1), backend);
}

// ---------------------------------------------------------------------------
// Steps II and III

std::vector<int> decode_ranks(std::span<const int> ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<int> unused(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) unused[static_cast<std::size_t>(v)] = v + 1;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const int r = ranks[static_cast<std::size_t>(i)];
    if (r < 1 || r > n - i) {
      throw InvalidInput("rank component " + std::to_string(i + 1) + " = " + std::to_string(r) +
                         " outside 1.." + std::to_string(n - i));
    }
    out.push_back(unused[static_cast<std::size_t>(r - 1)]);
    unused.erase(unused.begin() + (r - 1));
  }
  return out;
}

std::vector<int> encode_ranks(std::span<const int> permutation) {
  const int n = static_cast<int>(permutation.size());
  std::vector<int> unused(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) unused[static_cast<std::size_t>(v)] = v + 1;
  std::vector<int> out;
  for (int value : permutation) {
    auto it = std::find(unused.begin(), unused.end(), value);
    if (it == unused.end()) throw InvalidInput("input is not a permutation of 1..n");
    out.push_back(static_cast<int>(it - unused.begin()) + 1);
    unused.erase(it);
  }
  return out;
}

void superpose_ranks(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  const Register& b = bank.layout().at("B");
  require_each_branch(state, [&](Bits x) { return b.read(x) == 0; },
                      "rank superposition requires register B to be zero");
  const int n = bank.particles();
  const int width = bank.words().index_width();
  for (int i = 0; i < n; ++i) prepare_uniform(state, b.offset + i * width, width, n - i, false);
}

void unsuperpose_ranks(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  const Register& b = bank.layout().at("B");
  const int n = bank.particles();
  const int width = bank.words().index_width();
  for (int i = n - 1; i >= 0; --i) prepare_uniform(state, b.offset + i * width, width, n - i, true);
}

void ranks_to_permutation(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  state.rewrite_support([&](Bits x) {
    const Words words = bank.read(x, WordGroup::kB);
    std::vector<int> ranks;
    for (Bits w : words) ranks.push_back(static_cast<int>(w) + 1);
    const std::vector<int> perm = decode_ranks(ranks);
    Words out;
    for (int v : perm) out.push_back(static_cast<Bits>(v - 1));
    return bank.write(x, WordGroup::kB, out);
  });
}

void permutation_to_ranks(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  state.rewrite_support([&](Bits x) {
    const Words words = bank.read(x, WordGroup::kB);
    std::vector<int> perm;
    for (Bits w : words) perm.push_back(static_cast<int>(w) + 1);
    const std::vector<int> ranks = encode_ranks(perm);
    Words out;
    for (int r : ranks) out.push_back(static_cast<Bits>(r - 1));
    return bank.write(x, WordGroup::kB, out);
  });
}

void assign_identity(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  const Register& c = bank.layout().at("C");
  require_each_branch(state, [&](Bits x) { return c.read(x) == 0; },
                      "assign_identity requires register C to be zero");
  const Words id = identity_words(bank.particles());
  state.rewrite_support([&](Bits x) { return bank.write(x, WordGroup::kC, id); });
}

// ---------------------------------------------------------------------------
// Step IV

namespace {

Bits sort_branch(const RegisterBank& bank, Bits x, WordGroup key,
                 std::span<const WordGroup> co_moved, bool accumulate_parity) {
  Words keys = bank.read(x, key);
  const SortTranscript t = bank.schedule().sort(keys);
  x = bank.write(x, key, keys);
  for (WordGroup g : co_moved) {
    Words w = bank.read(x, g);
    apply_exchanges(w, t.exchanges, false);
    x = bank.write(x, g, w);
  }
  x = bank.record().write(x, t.record);
  if (accumulate_parity) x ^= static_cast<Bits>(t.parity()) << bank.parity().offset;
  return x;
}

// Replays the record in S on the given groups, leaving S untouched.
Bits replay_branch(const RegisterBank& bank, Bits x, std::span<const WordGroup> groups,
                   bool backwards) {
  const std::vector<Exchange> exchanges = bank.schedule().replay(bank.record().read(x));
  for (WordGroup g : groups) {
    Words w = bank.read(x, g);
    apply_exchanges(w, exchanges, backwards);
    x = bank.write(x, g, w);
  }
  return x;
}

// S ^= transcript(key); optionally P ^= its parity.
Bits clear_record_branch(const RegisterBank& bank, Bits x, WordGroup key, bool with_parity) {
  const SortTranscript t = bank.schedule().transcript(bank.read(x, key));
  x ^= t.record << bank.record().offset;
  if (with_parity) x ^= static_cast<Bits>(t.parity()) << bank.parity().offset;
  return x;
}

// Inverse of sort_branch: undo the exchanges on key and co-moved groups, then
// clear the record against the restored key.
Bits unsort_branch(const RegisterBank& bank, Bits x, WordGroup key,
                   std::span<const WordGroup> co_moved, bool with_parity) {
  std::vector<WordGroup> groups{key};
  groups.insert(groups.end(), co_moved.begin(), co_moved.end());
  x = replay_branch(bank, x, groups, true);
  return clear_record_branch(bank, x, key, with_parity);
}

// B ^= inverse(C).
Bits clear_b_branch(const RegisterBank& bank, Bits x) {
  const Words inv = inverse_permutation(bank.read(x, WordGroup::kC));
  return bank.write(x, WordGroup::kB, xor_words(bank.read(x, WordGroup::kB), inv));
}

// C ^= (1..n).
Bits toggle_identity_branch(const RegisterBank& bank, Bits x) {
  const Words id = identity_words(bank.particles());
  return bank.write(x, WordGroup::kC, xor_words(bank.read(x, WordGroup::kC), id));
}

constexpr WordGroup kCarryAC[] = {WordGroup::kA, WordGroup::kC};
constexpr WordGroup kCarryA[] = {WordGroup::kA};
constexpr WordGroup kOnlyB[] = {WordGroup::kB};
constexpr WordGroup kOnlyA[] = {WordGroup::kA};

}  // namespace

void sort_with_record(QuantumState& state, const RegisterBank& bank, WordGroup key,
                      std::span<const WordGroup> co_moved, bool accumulate_parity) {
  check_layout(state, bank);
  for (WordGroup g : co_moved) {
    if (g == key) throw InvalidInput("key register cannot also be co-moved");
  }
  require_each_branch(state, [&](Bits x) { return bank.record().read(x) == 0; },
                      "sort requires the exchange record to be zero");
  state.rewrite_support(
      [&](Bits x) { return sort_branch(bank, x, key, co_moved, accumulate_parity); });
}

void parity_phase(QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  const Bits p = bank.parity().mask();
  state.apply_sign_if([p](Bits x) { return (x & p) != 0; });
}

void antisymmetrize(QuantumState& state, const RegisterBank& bank, Statistics statistics) {
  check_layout(state, bank);
  require_each_branch(
      state,
      [&](Bits x) {
        if (!bank.ancillas_clear(x)) return false;
        const Words a = bank.read(x, WordGroup::kA);
        return std::adjacent_find(a.begin(), a.end(), std::greater_equal<>()) == a.end();
      },
      "antisymmetrize requires strictly ordered particle words and clear ancillas");

  // Steps II and III: B holds every permutation of 1..n with amplitude 1/sqrt(n!).
  superpose_ranks(state, bank);
  ranks_to_permutation(state, bank);
  assign_identity(state, bank);

  // Sort B, dragging A and C along; A now holds sigma(Psi), C holds sigma^-1.
  sort_with_record(state, bank, WordGroup::kB, kCarryAC, true);
  if (statistics == Statistics::kFermi) parity_phase(state, bank);

  // Uncompute B: unsort it, clear S and P from its transcript, then clear it
  // against C (B is the inverse permutation of C).
  state.rewrite_support([&](Bits x) {
    x = replay_branch(bank, x, kOnlyB, true);
    x = clear_record_branch(bank, x, WordGroup::kB, true);
    return clear_b_branch(bank, x);
  });

  // Uncompute C: sorting it restores 1..n (and the ordered input in A). Clear
  // C, unsort A, then clear the record from A's own transcript, which matches
  // C's because the input labels were in increasing order.
  sort_with_record(state, bank, WordGroup::kC, kCarryA, false);
  state.rewrite_support([&](Bits x) {
    x = toggle_identity_branch(bank, x);
    x = replay_branch(bank, x, kOnlyA, true);
    return clear_record_branch(bank, x, WordGroup::kA, false);
  });

  state.for_each_entry([&](Bits x, Amplitude) {
    if (!bank.ancillas_clear(x)) {
      throw InvariantViolation("antisymmetrization left a nonzero ancilla");
    }
  });
}

void unantisymmetrize(QuantumState& state, const RegisterBank& bank, Statistics statistics) {
  check_layout(state, bank);
  state.rewrite_support([&](Bits x) {
    x = clear_record_branch(bank, x, WordGroup::kA, false);
    x = replay_branch(bank, x, kOnlyA, false);
    x = toggle_identity_branch(bank, x);
    return unsort_branch(bank, x, WordGroup::kC, kCarryA, false);
  });
  state.rewrite_support([&](Bits x) {
    x = clear_b_branch(bank, x);
    x = clear_record_branch(bank, x, WordGroup::kB, true);
    return replay_branch(bank, x, kOnlyB, false);
  });
  if (statistics == Statistics::kFermi) parity_phase(state, bank);
  state.rewrite_support([&](Bits x) {
    x = unsort_branch(bank, x, WordGroup::kB, kCarryAC, true);
    return toggle_identity_branch(bank, x);
  });
  permutation_to_ranks(state, bank);
  unsuperpose_ranks(state, bank);
}

QuantumState extract_particles(const QuantumState& state, const RegisterBank& bank) {
  check_layout(state, bank);
  const RegisterLayout particles = bank.particle_layout();
  const Bits keep = low_mask(particles.num_qubits());
  std::vector<BasisAmplitude> out;
  state.for_each_entry([&](Bits x, Amplitude a) {
    if (!bank.ancillas_clear(x)) {
      throw InvariantViolation("cannot drop ancillas: a branch has a nonzero ancilla");
    }
    out.push_back({x & keep, a});
  });
  const Backend backend = particles.num_qubits() <= kMaxDenseQubits ? state.backend()
                                                                    : Backend::kSparse;
  return QuantumState::from_trusted_entries(particles, std::move(out), backend);
}

QuantumState antisymmetrized_state(const RegisterBank& bank,
                                   std::span<const WeightedConfiguration> configs,
                                   Statistics statistics, Backend backend) {
  QuantumState state = prepare_ordered_input(bank, configs, backend);
  antisymmetrize(state, bank, statistics);
  return extract_particles(state, bank);
}

namespace {

double swap_test(const QuantumState& state, const QuWordLayout& words, int i, int j,
                 double sign) {
  if (i == j) throw InvalidInput("transposition test needs two distinct particles");
  if (i < 0 || j < 0 || i >= words.particles || j >= words.particles) {
    throw InvalidInput("particle index out of range");
  }
  const int w = words.word_width();
  if (words.particles * w > state.num_qubits()) {
    throw InvalidInput("state is narrower than the particle words");
  }
  double worst = 0.0;
  state.for_each_entry([&](Bits b, Amplitude a) {
    const Bits wi = read_field(b, i * w, w);
    const Bits wj = read_field(b, j * w, w);
    const Bits swapped = write_field(write_field(b, i * w, w, wj), j * w, w, wi);
    worst = std::max(worst, std::abs(state.amplitude(swapped) + sign * a));
  });
  return worst;
}

}  // namespace

double transposition_test(const QuantumState& state, const QuWordLayout& words, int i, int j) {
  return swap_test(state, words, i, j, 1.0);
}

double symmetric_transposition_test(const QuantumState& state, const QuWordLayout& words,
                                    int i, int j) {
  return swap_test(state, words, i, j, -1.0);
}

}  // namespace fermisim
