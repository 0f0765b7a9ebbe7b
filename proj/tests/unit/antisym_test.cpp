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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "fermisim/antisym.hpp"
#include "fermisim/errors.hpp"
#include "support/oracles.hpp"

namespace fermisim {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Bits encode_tuple(const QuWordLayout& words, const std::vector<int>& labels) {
  Bits b = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    b = write_field(b, static_cast<int>(k) * words.word_width(), words.word_width(),
                    static_cast<Bits>(labels[k] - 1));
  }
  return b;
}

// Largest amplitude deviation between a particle-register state and a
// reference map of label tuples.
double deviation(const QuantumState& state, const QuWordLayout& words,
                 const std::map<std::vector<int>, double>& reference) {
  double worst = 0.0;
  double reference_weight = 0.0;
  for (const auto& [tuple, amp] : reference) {
    worst = std::max(worst, std::abs(state.amplitude(encode_tuple(words, tuple)) - amp));
    reference_weight += amp * amp;
  }
  // Anything outside the reference support shows up as missing norm.
  return std::max(worst, std::abs(state.norm() - std::sqrt(reference_weight)));
}

std::vector<std::vector<int>> increasing_tuples(int n, int max_label) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(static_cast<std::size_t>(max_label), false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::vector<int> t;
    for (int i = 0; i < max_label; ++i) {
      if (pick[static_cast<std::size_t>(i)]) t.push_back(i + 1);
    }
    out.push_back(t);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

TEST(Ranks, DecodeExamples) {
  EXPECT_EQ(decode_ranks(std::vector<int>{1}), (std::vector<int>{1}));
  EXPECT_EQ(decode_ranks(std::vector<int>{1, 1}), (std::vector<int>{1, 2}));
  EXPECT_EQ(decode_ranks(std::vector<int>{2, 1}), (std::vector<int>{2, 1}));
  EXPECT_EQ(decode_ranks(std::vector<int>{3, 1, 1}), (std::vector<int>{3, 1, 2}));
  EXPECT_THROW(decode_ranks(std::vector<int>{1, 2}), InvalidInput);
  EXPECT_THROW(decode_ranks(std::vector<int>{0, 1}), InvalidInput);
  EXPECT_THROW(encode_ranks(std::vector<int>{1, 1}), InvalidInput);
}

TEST(Ranks, BijectionOntoPermutations) {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<int>> seen;
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 1);
    std::vector<int> ranks(static_cast<std::size_t>(n), 1);
    while (true) {
      const std::vector<int> perm = decode_ranks(ranks);
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(sorted, identity);
      EXPECT_EQ(encode_ranks(perm), ranks);
      seen.insert(perm);
      int i = n - 1;
      while (i >= 0 && ranks[static_cast<std::size_t>(i)] == n - i) {
        ranks[static_cast<std::size_t>(i)] = 1;
        --i;
      }
      if (i < 0) break;
      ++ranks[static_cast<std::size_t>(i)];
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(factorial(n)));
  }
}

TEST(RegisterBank, LayoutAndWordAccess) {
  const RegisterBank bank(QuWordLayout{3, 3, false});
  const RegisterLayout& layout = bank.layout();
  EXPECT_EQ(layout.at("a0").offset, 0);
  EXPECT_EQ(layout.at("a2").offset, 6);
  EXPECT_EQ(layout.at("B").width, 3 * 2);
  EXPECT_EQ(layout.at("C").width, 3 * 2);
  EXPECT_EQ(layout.at("P").width, 1);
  EXPECT_EQ(layout.num_qubits(), 9 + 6 + 6 + bank.schedule().record_bits() + 1);
  const std::vector<Bits> c = {2, 0, 1};
  const Bits bits = bank.write(0, WordGroup::kC, c);
  EXPECT_EQ(bank.read(bits, WordGroup::kC), c);
  EXPECT_FALSE(bank.ancillas_clear(bits));
  EXPECT_TRUE(bank.ancillas_clear(0b111111111));
  EXPECT_THROW(RegisterBank(QuWordLayout{1, 3, false}), InvalidInput);
}

TEST(RegisterBank, SpinWordsSplitIntoSpinAndPosition) {
  const RegisterBank bank(QuWordLayout{2, 2, true});
  EXPECT_EQ(bank.layout().at("s1").offset, 3);
  EXPECT_EQ(bank.layout().at("x1").offset, 4);
  EXPECT_EQ(bank.particle_layout().num_qubits(), 6);
}

TEST(Steps, SuperposeRanksIsUniformAndReversible) {
  for (int n = 1; n <= 4; ++n) {
    const RegisterBank bank(QuWordLayout{3, n, false});
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{labels});
    const QuantumState start = state;
    superpose_ranks(state, bank);
    EXPECT_EQ(state.support_size(), static_cast<std::size_t>(factorial(n)));
    state.for_each_entry([&](Bits b, Amplitude a) {
      EXPECT_NEAR(a.real(), 1.0 / std::sqrt(factorial(n)), 1e-14);
      EXPECT_NEAR(a.imag(), 0.0, 1e-15);
      const auto ranks = bank.read(b, WordGroup::kB);
      for (int i = 0; i < n; ++i) EXPECT_LT(ranks[static_cast<std::size_t>(i)], static_cast<Bits>(n - i));
    });
    ranks_to_permutation(state, bank);
    std::set<std::vector<Bits>> perms;
    state.for_each_entry([&](Bits b, Amplitude) { perms.insert(bank.read(b, WordGroup::kB)); });
    EXPECT_EQ(perms.size(), static_cast<std::size_t>(factorial(n)));
    permutation_to_ranks(state, bank);
    unsuperpose_ranks(state, bank);
    EXPECT_LT(l2_distance(state, start), 1e-13);
  }
}

TEST(Steps, AssignIdentityRequiresClearC) {
  const RegisterBank bank(QuWordLayout{2, 2, false});
  QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{{1, 2}});
  assign_identity(state, bank);
  state.for_each_entry([&](Bits b, Amplitude) {
    EXPECT_EQ(bank.read(b, WordGroup::kC), (std::vector<Bits>{0, 1}));
  });
  EXPECT_THROW(assign_identity(state, bank), InvalidInput);
}

class AntisymmetrizeTest : public ::testing::TestWithParam<SortAlgorithm> {};

TEST_P(AntisymmetrizeTest, MatchesSlaterOracleExhaustively) {
  for (int n = 1; n <= 3; ++n) {
    const QuWordLayout words{3, n, false};
    const RegisterBank bank(words, GetParam());
    for (const auto& labels : increasing_tuples(n, 8)) {
      QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{labels});
      antisymmetrize(state, bank);
      state.for_each_entry([&](Bits b, Amplitude) { EXPECT_TRUE(bank.ancillas_clear(b)); });
      const QuantumState out = extract_particles(state, bank);
      EXPECT_LT(deviation(out, words, testing::brute_force_slater(labels, false)), 1e-12)
          << "labels starting " << labels.front();
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) EXPECT_LT(transposition_test(out, words, i, j), 1e-12);
      }
    }
  }
}

TEST_P(AntisymmetrizeTest, BosonModeIsSymmetric) {
  const QuWordLayout words{3, 3, false};
  const RegisterBank bank(words, GetParam());
  for (const auto& labels : increasing_tuples(3, 8)) {
    const WeightedConfiguration wc{OrderedConfiguration{labels}, {1.0, 0.0}};
    const QuantumState out = antisymmetrized_state(bank, std::span(&wc, 1), Statistics::kBose);
    EXPECT_LT(deviation(out, words, testing::brute_force_slater(labels, true)), 1e-12);
    EXPECT_LT(symmetric_transposition_test(out, words, 0, 2), 1e-12);
  }
}

TEST_P(AntisymmetrizeTest, FourParticles) {
  const QuWordLayout words{3, 4, false};
  const RegisterBank bank(words, GetParam());
  const std::vector<int> labels = {1, 2, 5, 7};
  const WeightedConfiguration wc{OrderedConfiguration{labels}, {1.0, 0.0}};
  const QuantumState out = antisymmetrized_state(bank, std::span(&wc, 1));
  EXPECT_EQ(out.support_size(), 24U);
  EXPECT_LT(deviation(out, words, testing::brute_force_slater(labels, false)), 1e-12);
}

TEST_P(AntisymmetrizeTest, UnantisymmetrizeRestoresInput) {
  const RegisterBank bank(QuWordLayout{2, 3, true}, GetParam());
  for (Statistics stats : {Statistics::kFermi, Statistics::kBose}) {
    QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{{2, 3, 7}});
    const QuantumState start = state;
    antisymmetrize(state, bank, stats);
    unantisymmetrize(state, bank, stats);
    EXPECT_LT(l2_distance(state, start), 1e-13);
  }
}

INSTANTIATE_TEST_SUITE_P(Algorithms, AntisymmetrizeTest,
                         ::testing::Values(SortAlgorithm::kHeap, SortAlgorithm::kOddEven));

TEST(Antisymmetrize, SuperposedInputsAreMappedLinearly) {
  const QuWordLayout words{2, 2, false};
  const RegisterBank bank(words);
  const double c = 1.0 / std::sqrt(2.0);
  const WeightedConfiguration inputs[] = {{OrderedConfiguration{{1, 2}}, {c, 0.0}},
                                          {OrderedConfiguration{{3, 4}}, {0.0, c}}};
  const QuantumState out = antisymmetrized_state(bank, inputs);
  EXPECT_NEAR(std::abs(out.amplitude(encode_tuple(words, {1, 2})) - Amplitude(0.5, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitude(encode_tuple(words, {2, 1})) - Amplitude(-0.5, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitude(encode_tuple(words, {3, 4})) - Amplitude(0.0, 0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitude(encode_tuple(words, {4, 3})) - Amplitude(0.0, -0.5)), 0.0, 1e-14);
}

TEST(Antisymmetrize, DenseBackendAgreesWithSparse) {
  const QuWordLayout words{2, 2, false};
  const RegisterBank bank(words);
  const WeightedConfiguration wc{OrderedConfiguration{{1, 4}}, {1.0, 0.0}};
  const QuantumState sparse = antisymmetrized_state(bank, std::span(&wc, 1));
  const QuantumState dense =
      antisymmetrized_state(bank, std::span(&wc, 1), Statistics::kFermi, Backend::kDense);
  EXPECT_LT(max_amplitude_difference(sparse, dense.with_backend(Backend::kSparse)), 1e-14);
}

TEST(Antisymmetrize, RejectsBadInputs) {
  const RegisterBank bank(QuWordLayout{2, 2, false});
  EXPECT_THROW(prepare_ordered_input(bank, OrderedConfiguration{{3, 1}}), InvalidInput);
  EXPECT_THROW(prepare_ordered_input(bank, OrderedConfiguration{{2, 2}}), InvalidInput);
  EXPECT_THROW(prepare_ordered_input(bank, OrderedConfiguration{{1, 5}}), InvalidInput);
  EXPECT_THROW(prepare_ordered_input(bank, OrderedConfiguration{{1}}), InvalidInput);
  // An unordered register content is rejected by the driver itself.
  const std::vector<BasisAmplitude> unordered = {{bank.write(0, WordGroup::kA, std::vector<Bits>{2, 0}), 1.0}};
  QuantumState state = QuantumState::from_amplitudes(bank.layout(), unordered, Backend::kSparse);
  EXPECT_THROW(antisymmetrize(state, bank), InvalidInput);
  const QuantumState other = QuantumState::basis(RegisterLayout::flat(3), BasisString(0, 3));
  QuantumState copy = other;
  EXPECT_THROW(antisymmetrize(copy, bank), InvalidInput);
}

TEST(TranspositionTest, DetectsMissingSigns) {
  const QuWordLayout words{2, 2, false};
  const RegisterLayout layout = RegisterBank(words).particle_layout();
  const QuantumState product =
      QuantumState::basis(layout, BasisString(encode_tuple(words, {1, 3}), 4));
  EXPECT_NEAR(transposition_test(product, words, 0, 1), 1.0, 1e-15);
  EXPECT_THROW(transposition_test(product, words, 0, 0), InvalidInput);
  EXPECT_THROW(transposition_test(product, words, 0, 2), InvalidInput);
}

}  // namespace
}  // namespace fermisim
