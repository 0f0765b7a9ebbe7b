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

#include "fermisim/sq_hubbard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "fermisim/errors.hpp"

namespace fermisim {

namespace {

std::pair<int, int> ordered(std::pair<int, int> bond) {
  return bond.first < bond.second ? bond : std::pair{bond.second, bond.first};
}

std::vector<std::pair<int, int>> sorted_bonds(const LatticeSpec& lattice) {
  std::vector<std::pair<int, int>> out;
  out.reserve(lattice.bonds.size());
  for (const auto& b : lattice.bonds) out.push_back(ordered(b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LatticeSpec LatticeSpec::open_chain(int sites) {
  if (sites < 1) throw InvalidInput("lattice needs at least one site");
  LatticeSpec lattice{sites, {}};
  for (int s = 1; s < sites; ++s) lattice.bonds.emplace_back(s, s + 1);
  return lattice;
}

void LatticeSpec::validate() const {
  if (sites < 1) throw InvalidInput("lattice needs at least one site");
  std::set<std::pair<int, int>> seen;
  for (const auto& bond : bonds) {
    const auto [a, b] = ordered(bond);
    if (a < 1 || b > sites) {
      throw InvalidInput("bond (" + std::to_string(bond.first) + "," +
                         std::to_string(bond.second) + ") outside sites 1.." +
                         std::to_string(sites));
    }
    if (a == b) throw InvalidInput("bond joins site " + std::to_string(a) + " to itself");
    if (!seen.insert({a, b}).second) {
      throw InvalidInput("duplicate bond (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
}

bool LatticeSpec::adjacent(int a, int b) const {
  const auto key = ordered({a, b});
  return std::any_of(bonds.begin(), bonds.end(),
                     [&](const auto& bond) { return ordered(bond) == key; });
}

void HubbardParams::validate() const {
  if (!std::isfinite(v0) || !std::isfinite(t0)) {
    throw InvalidInput("Hubbard parameters must be finite");
  }
}

void TrotterPlan::validate() const {
  if (steps < 1) throw InvalidInput("Trotter plan needs at least one step");
  if (!std::isfinite(time)) throw InvalidInput("evolution time must be finite");
}

ModeLayout::ModeLayout(int sites) : sites_(sites) {
  if (sites < 1) throw InvalidInput("mode layout needs at least one site");
  if (2 * sites > kMaxQubits) throw InvalidInput("too many sites for a 64-qubit register");
}

int ModeLayout::mode(int site, Spin spin) const {
  if (site < 1 || site > sites_) {
    throw InvalidInput("site " + std::to_string(site) + " outside 1.." + std::to_string(sites_));
  }
  return 2 * (site - 1) + static_cast<int>(spin);
}

Orbital ModeLayout::orbital(int mode) const {
  if (mode < 0 || mode >= num_modes()) throw InvalidInput("mode index out of range");
  return Orbital{mode / 2 + 1, static_cast<Spin>(mode % 2)};
}

RegisterLayout ModeLayout::register_layout() const {
  return RegisterLayout::flat(num_modes(), "modes");
}

BasisString encode_occupation(const ModeLayout& layout, std::span<const Orbital> occupied) {
  Bits bits = 0;
  for (const Orbital& o : occupied) {
    const Bits bit = Bits{1} << layout.mode(o.site, o.spin);
    if ((bits & bit) != 0) throw InvalidInput("orbital occupied twice");
    bits |= bit;
  }
  return BasisString(bits, layout.num_modes());
}

int jw_parity(Bits bits, int mode_a, int mode_b) {
  if (mode_a >= mode_b) throw InvalidInput("jw_parity requires mode_a < mode_b");
  const Bits between = low_mask(mode_b) & ~low_mask(mode_a + 1);
  return std::popcount(bits & between) & 1;
}

void evolve_potential(QuantumState& state, const LatticeSpec& lattice,
                      const HubbardParams& params, double dt) {
  const ModeLayout modes(lattice.sites);
  const double theta = -params.v0 * dt;
  for (int s = 1; s <= lattice.sites; ++s) {
    const Bits both = (Bits{1} << modes.mode(s, Spin::kUp)) |
                      (Bits{1} << modes.mode(s, Spin::kDown));
    state.apply_phase_if([both](Bits b) { return (b & both) == both; }, theta);
  }
}

void evolve_hopping_pair(QuantumState& state, const LatticeSpec& lattice, int site_a,
                         int site_b, Spin spin, const HubbardParams& params, double dt) {
  if (!lattice.adjacent(site_a, site_b)) {
    throw InvalidInput("sites " + std::to_string(site_a) + " and " + std::to_string(site_b) +
                       " are not neighbours");
  }
  const ModeLayout modes(lattice.sites);
  int a = modes.mode(site_a, spin);
  int b = modes.mode(site_b, spin);
  if (a > b) std::swap(a, b);
  const Bits abit = Bits{1} << a;
  const Bits bbit = Bits{1} << b;

  // Pairs (a occupied, b empty) <-> (a empty, b occupied); the hop matrix
  // element between them is t0 * (-1)^parity of the modes in between.
  for (int parity : {0, 1}) {
    TwoLevelPairing pairing([=](Bits x) -> std::optional<TwoLevelPairing::Pair> {
      const bool has_a = (x & abit) != 0;
      const bool has_b = (x & bbit) != 0;
      if (has_a == has_b || jw_parity(x, a, b) != parity) return std::nullopt;
      const Bits rest = x & ~(abit | bbit);
      return TwoLevelPairing::Pair{rest | abit, rest | bbit};
    });
    const double sign = parity == 0 ? 1.0 : -1.0;
    state.apply_two_level_mix(pairing, gates::exp_sigma_x(sign * params.t0 * dt));
  }
}

void trotter_step(QuantumState& state, const LatticeSpec& lattice,
                  const HubbardParams& params, double dt) {
  evolve_potential(state, lattice, params, dt);
  for (const auto& [s, t] : sorted_bonds(lattice)) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      evolve_hopping_pair(state, lattice, s, t, spin, params, dt);
    }
  }
}

void trotter_evolve(QuantumState& state, const LatticeSpec& lattice,
                    const HubbardParams& params, const TrotterPlan& plan) {
  lattice.validate();
  params.validate();
  plan.validate();
  if (state.num_qubits() != 2 * lattice.sites) {
    throw InvalidInput("state width does not match 2 * sites");
  }
  if (plan.time == 0.0) return;
  const double dt = plan.dt();
  for (int step = 0; step < plan.steps; ++step) trotter_step(state, lattice, params, dt);
}

OpTally op_count(const LatticeSpec& lattice, const TrotterPlan& plan) {
  lattice.validate();
  plan.validate();
  const ModeLayout modes(lattice.sites);
  OpTally per_step;
  per_step.add("controlled_phase", static_cast<std::uint64_t>(lattice.sites));
  for (const auto& [s, t] : sorted_bonds(lattice)) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      const int a = modes.mode(s, spin);
      const int b = modes.mode(t, spin);
      const auto between = static_cast<std::uint64_t>(std::abs(b - a) - 1);
      per_step.add("parity_cnot", 2 * between);
      per_step.add("two_level_rotation", 1);
    }
  }
  per_step *= static_cast<std::uint64_t>(plan.steps);
  return per_step;
}

}  // namespace fermisim
