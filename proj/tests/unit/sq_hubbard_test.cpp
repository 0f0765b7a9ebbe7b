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

#include <bit>
#include <cmath>
#include <numbers>

#include "fermisim/errors.hpp"
#include "fermisim/sq_hubbard.hpp"
#include "support/oracles.hpp"

namespace fermisim {
namespace {

using testing::CMatrix;
using testing::CVector;

QuantumState basis_state(int sites, Bits bits, Backend backend = Backend::kDense) {
  return QuantumState::basis(ModeLayout(sites).register_layout(), BasisString(bits, 2 * sites),
                             backend);
}

TEST(ModeLayout, InterleavesSpins) {
  const ModeLayout modes(3);
  EXPECT_EQ(modes.num_modes(), 6);
  EXPECT_EQ(modes.mode(1, Spin::kUp), 0);
  EXPECT_EQ(modes.mode(1, Spin::kDown), 1);
  EXPECT_EQ(modes.mode(3, Spin::kDown), 5);
  EXPECT_EQ(modes.orbital(4), (Orbital{3, Spin::kUp}));
  EXPECT_THROW(modes.mode(4, Spin::kUp), InvalidInput);
  EXPECT_EQ(modes.register_layout().num_qubits(), 6);
}

TEST(EncodeOccupation, SetsModeBits) {
  const ModeLayout modes(2);
  const Orbital occ[] = {{1, Spin::kUp}, {2, Spin::kDown}};
  EXPECT_EQ(encode_occupation(modes, occ).value(), 0b1001U);
  const Orbital twice[] = {{1, Spin::kUp}, {1, Spin::kUp}};
  EXPECT_THROW(encode_occupation(modes, twice), InvalidInput);
}

TEST(JwParity, CountsModesStrictlyBetween) {
  EXPECT_EQ(jw_parity(0b0000, 0, 2), 0);
  EXPECT_EQ(jw_parity(0b0010, 0, 2), 1);
  EXPECT_EQ(jw_parity(0b0101, 0, 2), 0);
  EXPECT_EQ(jw_parity(0b0110, 0, 3), 0);
  EXPECT_EQ(jw_parity(0b0110, 0, 4), 0);
  EXPECT_EQ(jw_parity(0b1110, 0, 4), 1);
  EXPECT_THROW(jw_parity(0, 2, 2), InvalidInput);
  EXPECT_THROW(jw_parity(0, 3, 1), InvalidInput);
}

TEST(LatticeSpec, OpenChainAndValidation) {
  const LatticeSpec chain = LatticeSpec::open_chain(4);
  EXPECT_EQ(chain.bonds.size(), 3U);
  EXPECT_TRUE(chain.adjacent(2, 3));
  EXPECT_TRUE(chain.adjacent(3, 2));
  EXPECT_FALSE(chain.adjacent(1, 3));
  EXPECT_THROW((LatticeSpec{2, {{1, 3}}}.validate()), InvalidInput);
  EXPECT_THROW((LatticeSpec{2, {{1, 1}}}.validate()), InvalidInput);
  EXPECT_THROW((LatticeSpec{2, {{1, 2}, {2, 1}}}.validate()), InvalidInput);
  EXPECT_THROW((HubbardParams{std::nan(""), 1.0}.validate()), InvalidInput);
  EXPECT_THROW((TrotterPlan{1.0, 0}.validate()), InvalidInput);
}

TEST(EvolvePotential, PhasesOnlyDoublyOccupiedSites) {
  const LatticeSpec lattice = LatticeSpec::open_chain(2);
  const HubbardParams params{2.0, 0.0};
  for (Bits bits = 0; bits < 16; ++bits) {
    QuantumState s = basis_state(2, bits);
    evolve_potential(s, lattice, params, 0.25);
    const int doubles = ((bits & 3U) == 3U) + ((bits & 12U) == 12U);
    EXPECT_NEAR(std::arg(s.amplitude(bits)), std::remainder(-0.5 * doubles, 2 * std::numbers::pi), 1e-15);
  }
}

// Every basis state of the 3-site chain, every bond and spin: the hopping
// propagator must equal the exponential of the Pauli-string hopping term.
TEST(EvolveHoppingPair, MatchesOperatorOracleOnAllBasisStates) {
  const LatticeSpec lattice = LatticeSpec::open_chain(3);
  const HubbardParams params{0.0, 0.7};
  const double dt = 0.37;
  double worst = 0.0;
  for (const auto& [a, b] : lattice.bonds) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      const CMatrix u = testing::series_expm(
          testing::hopping_from_operators(3, a, b, spin, params.t0), dt);
      for (Bits bits = 0; bits < 64; ++bits) {
        QuantumState s = basis_state(3, bits);
        evolve_hopping_pair(s, lattice, a, b, spin, params, dt);
        worst = std::max(worst, (testing::state_vector(s) - u.col(static_cast<Eigen::Index>(bits))).norm());
      }
    }
  }
  EXPECT_LT(worst, 1e-12);
}

// A long-range bond has several intervening modes, so the sign depends on
// their occupation parity.
TEST(EvolveHoppingPair, HandlesLongRangeBonds) {
  const LatticeSpec lattice{3, {{1, 3}}};
  const HubbardParams params{0.0, 1.1};
  const CMatrix u = testing::series_expm(testing::hopping_from_operators(3, 1, 3, Spin::kDown, 1.1), 0.2);
  double worst = 0.0;
  for (Bits bits = 0; bits < 64; ++bits) {
    QuantumState s = basis_state(3, bits, Backend::kSparse);
    evolve_hopping_pair(s, lattice, 3, 1, Spin::kDown, params, 0.2);
    worst = std::max(worst, (testing::state_vector(s) - u.col(static_cast<Eigen::Index>(bits))).norm());
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(EvolveHoppingPair, RejectsNonNeighbours) {
  const LatticeSpec lattice = LatticeSpec::open_chain(3);
  QuantumState s = basis_state(3, 0);
  EXPECT_THROW(evolve_hopping_pair(s, lattice, 1, 3, Spin::kUp, {0.0, 1.0}, 0.1), InvalidInput);
}

TEST(EvolveHoppingPair, SingleElectronOscillates) {
  const LatticeSpec lattice = LatticeSpec::open_chain(2);
  QuantumState s = basis_state(2, 0b0001);
  evolve_hopping_pair(s, lattice, 1, 2, Spin::kUp, {0.0, 1.0}, 0.4);
  EXPECT_NEAR(s.amplitude(0b0001).real(), std::cos(0.4), 1e-15);
  EXPECT_NEAR(s.amplitude(0b0100).imag(), -std::sin(0.4), 1e-15);
}

TEST(TrotterStep, EqualsOrderedProductOfTermExponentials) {
  const LatticeSpec lattice = LatticeSpec::open_chain(3);
  const HubbardParams params{1.3, -0.8};
  const double dt = 0.11;
  // Potential first, then bonds in order, up before down.
  CMatrix potential = CMatrix::Zero(64, 64);
  for (int site = 1; site <= 3; ++site) {
    const CMatrix up = testing::jw_annihilator(6, 2 * (site - 1));
    const CMatrix down = testing::jw_annihilator(6, 2 * (site - 1) + 1);
    potential += params.v0 * (up.adjoint() * up) * (down.adjoint() * down);
  }
  CMatrix step = testing::series_expm(potential, dt);
  for (const auto& [a, b] : lattice.bonds) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      step = testing::series_expm(testing::hopping_from_operators(3, a, b, spin, params.t0), dt) * step;
    }
  }
  QuantumState s = basis_state(3, 0b011001);
  const CVector start = testing::state_vector(s);
  trotter_step(s, lattice, params, dt);
  EXPECT_LT((testing::state_vector(s) - step * start).norm(), 1e-12);
}

TEST(TrotterEvolve, ZeroTimeIsIdentity) {
  QuantumState s = basis_state(2, 0b0110);
  const QuantumState before = s;
  trotter_evolve(s, LatticeSpec::open_chain(2), {4.0, 1.0}, {0.0, 10});
  EXPECT_EQ(max_amplitude_difference(s, before), 0.0);
}

TEST(TrotterEvolve, NoHoppingGivesExactPhase) {
  QuantumState s = basis_state(2, 0b0011);
  trotter_evolve(s, LatticeSpec::open_chain(2), {4.0, 0.0}, {0.5, 7});
  EXPECT_NEAR(std::abs(s.amplitude(0b0011) - std::polar(1.0, -2.0)), 0.0, 1e-13);
}

TEST(TrotterEvolve, ConvergesToOperatorOracleAtFirstOrder) {
  const LatticeSpec lattice = LatticeSpec::open_chain(2);
  const HubbardParams params{4.0, 1.0};
  const CMatrix exact = testing::series_expm(testing::hubbard_from_operators(lattice, params), 1.0);
  std::vector<double> errors;
  for (int r : {16, 32, 64}) {
    QuantumState s = basis_state(2, 0b1001);
    trotter_evolve(s, lattice, params, {1.0, r});
    errors.push_back((testing::state_vector(s) - exact.col(0b1001)).norm());
  }
  EXPECT_NEAR(errors[0] / errors[1], 2.0, 0.2);
  EXPECT_NEAR(errors[1] / errors[2], 2.0, 0.2);
}

TEST(TrotterEvolve, ConservesParticleNumber) {
  QuantumState s = basis_state(3, 0b001011, Backend::kSparse);
  trotter_evolve(s, LatticeSpec::open_chain(3), {2.0, 1.0}, {2.0, 20});
  s.for_each_entry([](Bits b, Amplitude a) {
    if (std::abs(a) > 1e-14) {
      EXPECT_EQ(std::popcount(b), 3);
    }
  });
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(TrotterEvolve, RejectsMismatchedState) {
  QuantumState s = basis_state(2, 0);
  EXPECT_THROW(trotter_evolve(s, LatticeSpec::open_chain(3), {1.0, 1.0}, {1.0, 1}), InvalidInput);
  EXPECT_THROW(trotter_evolve(s, LatticeSpec::open_chain(2), {1.0, 1.0}, {1.0, 0}), InvalidInput);
}

TEST(OpCount, ChainTallyPerStep) {
  // Per step on an m-site chain: m site phases, and for each of the 2(m-1)
  // bond/spin terms one rotation plus two parity CNOTs for the single
  // intervening mode.
  const OpTally tally = op_count(LatticeSpec::open_chain(4), {1.0, 3});
  EXPECT_EQ(tally.count("controlled_phase"), 3U * 4U);
  EXPECT_EQ(tally.count("two_level_rotation"), 3U * 6U);
  EXPECT_EQ(tally.count("parity_cnot"), 3U * 12U);
  EXPECT_EQ(tally.total(), 3U * 22U);
}

TEST(OpCount, GrowsNoFasterThanQuadratic) {
  for (int m : {4, 8, 16}) {
    const double small = static_cast<double>(op_count(LatticeSpec::open_chain(m), {1.0, 1}).total());
    const double large = static_cast<double>(op_count(LatticeSpec::open_chain(2 * m), {1.0, 1}).total());
    EXPECT_LE(large / small, 4.5);
  }
}

}  // namespace
}  // namespace fermisim
