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

#include "fermisim/fq_hubbard.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fermisim/errors.hpp"

namespace fermisim {

namespace {

// Bijection between encoded sites (x - 1) and block codes
// ((block - 1) << 1) | position, plus its inverse.
struct SiteRemap {
  std::vector<Bits> forward;
  std::vector<Bits> backward;
  int mixed_blocks = 0;  // blocks 0..mixed_blocks-1 receive the 2x2 rotation
};

SiteRemap t1_remap(int sites) {
  SiteRemap r;
  r.forward.resize(static_cast<std::size_t>(sites));
  r.backward.resize(static_cast<std::size_t>(sites));
  for (int x = 1; x <= sites; ++x) {
    const BlockCoordinates c = t1_block_coordinates(x);
    const Bits code = (static_cast<Bits>(c.block - 1) << 1) | static_cast<Bits>(c.position);
    r.forward[static_cast<std::size_t>(x - 1)] = code;
    r.backward[code] = static_cast<Bits>(x - 1);
  }
  r.mixed_blocks = sites / 2;
  return r;
}

// Interior sites 2..m-1 fill blocks 1..m/2-1; the two boundary sites share
// the last code block, which is left alone.
SiteRemap t2_remap(int sites) {
  SiteRemap r;
  r.forward.resize(static_cast<std::size_t>(sites));
  r.backward.resize(static_cast<std::size_t>(sites));
  for (int x = 1; x <= sites; ++x) {
    const BlockCoordinates c = t2_block_coordinates(x);
    const bool boundary = x == 1 || x == sites;
    const Bits block_code = boundary ? static_cast<Bits>(sites / 2 - 1)
                                     : static_cast<Bits>(c.block - 1);
    const Bits code = (block_code << 1) | static_cast<Bits>(c.position);
    r.forward[static_cast<std::size_t>(x - 1)] = code;
    r.backward[code] = static_cast<Bits>(x - 1);
  }
  r.mixed_blocks = sites / 2 - 1;
  return r;
}

void apply_block_step(QuantumState& state, const FirstQuantizedLayout& layout, int particle,
                      const SiteRemap& remap, const Matrix2& u) {
  const int offset = layout.position_offset(particle);
  const int width = layout.position_bits();
  auto relabel = [&](const std::vector<Bits>& table) {
    state.apply_permutation([&, offset, width](Bits b) {
      return write_field(b, offset, width, table[read_field(b, offset, width)]);
    });
  };
  relabel(remap.forward);
  if (remap.mixed_blocks == layout.sites() / 2) {
    // Every block is a genuine pair: one rotation of the position bit.
    state.apply_unitary(offset, u);
  } else if (remap.mixed_blocks > 0) {
    const Bits low = Bits{1} << offset;
    const auto limit = static_cast<Bits>(remap.mixed_blocks);
    state.apply_two_level_mix(
        TwoLevelPairing([=](Bits b) -> std::optional<TwoLevelPairing::Pair> {
          if ((read_field(b, offset, width) >> 1) >= limit) return std::nullopt;
          return TwoLevelPairing::Pair{b & ~low, b | low};
        }),
        u);
  }
  relabel(remap.backward);
}

void check_state(const QuantumState& state, const FirstQuantizedLayout& layout) {
  if (!(state.layout() == layout.register_layout())) {
    throw InvalidInput("state layout does not match the first-quantized layout");
  }
}

}  // namespace

FirstQuantizedLayout::FirstQuantizedLayout(int sites, int particles)
    : sites_(sites), particles_(particles) {
  if (sites < 2 || !std::has_single_bit(static_cast<unsigned>(sites))) {
    throw InvalidInput("first-quantized chain needs a power-of-two site count >= 2, got " +
                       std::to_string(sites));
  }
  if (particles < 1 || particles > 2 * sites) {
    throw InvalidInput("particle count must lie in 1.." + std::to_string(2 * sites));
  }
  position_bits_ = std::countr_zero(static_cast<unsigned>(sites));
  if (num_qubits() > kMaxQubits) throw InvalidInput("first-quantized layout exceeds 64 qubits");
}

int FirstQuantizedLayout::label(const Orbital& orbital) {
  return 2 * (orbital.site - 1) + static_cast<int>(orbital.spin) + 1;
}

Orbital FirstQuantizedLayout::orbital(int label) {
  return Orbital{(label - 1) / 2 + 1, static_cast<Spin>((label - 1) % 2)};
}

RegisterLayout FirstQuantizedLayout::register_layout() const {
  RegisterLayout layout;
  for (int k = 0; k < particles_; ++k) {
    layout.append("s" + std::to_string(k), 1);
    layout.append("x" + std::to_string(k), position_bits_);
  }
  return layout;
}

KineticSplit KineticSplit::for_chain(int sites) {
  KineticSplit split;
  for (int s = 1; s < sites; s += 2) split.t1.emplace_back(s, s + 1);
  for (int s = 2; s < sites; s += 2) split.t2.emplace_back(s, s + 1);
  return split;
}

BlockCoordinates t1_block_coordinates(int site) { return {(site + 1) / 2, site % 2}; }

BlockCoordinates t2_block_coordinates(int site) { return {site / 2, (site + 1) % 2}; }

QuantumState prepare_first_quantized(const FirstQuantizedLayout& layout,
                                     std::span<const Orbital> occupied, Statistics statistics,
                                     Backend backend) {
  if (static_cast<int>(occupied.size()) != layout.particles()) {
    throw InvalidInput("expected " + std::to_string(layout.particles()) +
                       " occupied orbitals, got " + std::to_string(occupied.size()));
  }
  OrderedConfiguration config;
  for (const Orbital& o : occupied) {
    if (o.site < 1 || o.site > layout.sites()) {
      throw InvalidInput("site " + std::to_string(o.site) + " outside 1.." +
                         std::to_string(layout.sites()));
    }
    config.labels.push_back(FirstQuantizedLayout::label(o));
  }
  std::sort(config.labels.begin(), config.labels.end());
  const RegisterBank bank = layout.register_bank();
  const WeightedConfiguration wc{config, {1.0, 0.0}};
  QuantumState state =
      antisymmetrized_state(bank, std::span(&wc, 1), statistics, Backend::kSparse);
  return state.with_backend(backend);
}

void evolve_potential_fq(QuantumState& state, const FirstQuantizedLayout& layout,
                         const HubbardParams& params, double dt) {
  check_state(state, layout);
  const int w = layout.word_width();
  for (int k = 0; k < layout.particles(); ++k) {
    for (int l = k + 1; l < layout.particles(); ++l) {
      state.apply_phase_if(
          [=](Bits b) {
            const Bits wk = read_field(b, k * w, w);
            const Bits wl = read_field(b, l * w, w);
            // Same position bits, different spin bit.
            return (wk ^ wl) == 1;
          },
          -params.v0 * dt);
    }
  }
}

void evolve_kinetic_particle(QuantumState& state, const FirstQuantizedLayout& layout,
                             int particle, const HubbardParams& params, double dt) {
  check_state(state, layout);
  if (particle < 0 || particle >= layout.particles()) {
    throw InvalidInput("particle index out of range");
  }
  const Matrix2 u = gates::exp_sigma_x(params.t0 * dt);
  apply_block_step(state, layout, particle, t1_remap(layout.sites()), u);
  apply_block_step(state, layout, particle, t2_remap(layout.sites()), u);
}

void trotter_evolve_fq(QuantumState& state, const FirstQuantizedLayout& layout,
                       const HubbardParams& params, const TrotterPlan& plan,
                       Statistics statistics) {
  check_state(state, layout);
  params.validate();
  plan.validate();
  if (validation_mode()) {
    const QuWordLayout words = layout.word_layout();
    for (int k = 0; k + 1 < layout.particles(); ++k) {
      const bool fermi = statistics == Statistics::kFermi;
      const double violation = fermi ? transposition_test(state, words, k, k + 1)
                                     : symmetric_transposition_test(state, words, k, k + 1);
      if (violation > 1e-9) {
        throw InvalidInput(fermi ? "first-quantized evolution requires an antisymmetric input"
                                 : "bosonic evolution requires a symmetric input");
      }
    }
  }
  if (plan.time == 0.0) return;
  const double dt = plan.dt();
  for (int step = 0; step < plan.steps; ++step) {
    evolve_potential_fq(state, layout, params, dt);
    for (int k = 0; k < layout.particles(); ++k) {
      evolve_kinetic_particle(state, layout, k, params, dt);
    }
  }
}

OpTally kinetic_op_count(const FirstQuantizedLayout& layout) {
  const auto b = static_cast<std::uint64_t>(layout.position_bits());
  OpTally tally;
  // Two block-diagonal parts, each relabelled forward and back.
  tally.add("remap_gate", 4 * (b * (b + 1) / 2));
  tally.add("two_level_rotation", 1);
  // T2 excludes the boundary block: its rotation carries b - 1 controls.
  if (layout.sites() > 2) tally.add("controlled_rotation", b);
  return tally;
}

OpTally op_count_fq(const FirstQuantizedLayout& layout, const TrotterPlan& plan) {
  plan.validate();
  const auto n = static_cast<std::uint64_t>(layout.particles());
  const auto b = static_cast<std::uint64_t>(layout.position_bits());
  OpTally per_step;
  const std::uint64_t pairs = n * (n - 1) / 2;
  // Compare words into scratch and back, then one controlled phase.
  per_step.add("compare_cnot", pairs * 2 * (b + 1));
  per_step.add("controlled_phase", pairs);
  OpTally kinetic = kinetic_op_count(layout);
  kinetic *= n;
  for (const auto& [kind, count] : kinetic.by_kind) per_step.add(kind, count);
  per_step *= static_cast<std::uint64_t>(plan.steps);
  return per_step;
}

}  // namespace fermisim
