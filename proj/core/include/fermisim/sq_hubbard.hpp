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

// Second-quantized Hubbard model on qubits: one qubit per (site, spin) mode,
// evolved by a first-order product formula of on-site phases and
// Jordan-Wigner-signed nearest-neighbour hops.

#ifndef FERMISIM_SQ_HUBBARD_HPP_
#define FERMISIM_SQ_HUBBARD_HPP_

#include <span>
#include <utility>
#include <vector>

#include "fermisim/op_tally.hpp"
#include "fermisim/state.hpp"

namespace fermisim {

enum class Spin : int { kUp = 0, kDown = 1 };

/// A (site, spin) single-particle state. Sites are 1-based.
struct Orbital {
  int site = 1;
  Spin spin = Spin::kUp;

  friend auto operator<=>(const Orbital&, const Orbital&) = default;
};

/// Site count plus neighbour bonds (1-based, unordered).
struct LatticeSpec {
  int sites = 0;
  std::vector<std::pair<int, int>> bonds;

  /// Open chain (1,2), (2,3), ..., (m-1,m).
  static LatticeSpec open_chain(int sites);

  /// Throws InvalidInput for m < 1, out-of-range or self bonds, duplicates.
  void validate() const;
  bool adjacent(int a, int b) const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct HubbardParams {
  double v0 = 0.0;  ///< on-site interaction strength
  double t0 = 0.0;  ///< hopping strength

  void validate() const;
  friend bool operator==(const HubbardParams&, const HubbardParams&) = default;
};

/// Total evolution time split into `steps` equal slices.
struct TrotterPlan {
  double time = 0.0;
  int steps = 1;

  double dt() const { return time / steps; }
  void validate() const;
  friend bool operator==(const TrotterPlan&, const TrotterPlan&) = default;
};

/// Mode index l(s, sigma) = 2(s-1) + sigma; qubit index equals mode index.
class ModeLayout {
 public:
  explicit ModeLayout(int sites);

  int sites() const { return sites_; }
  int num_modes() const { return 2 * sites_; }
  int mode(int site, Spin spin) const;
  Orbital orbital(int mode) const;
  /// Single register "modes" of width 2m.
  RegisterLayout register_layout() const;

 private:
  int sites_;
};

BasisString encode_occupation(const ModeLayout& layout, std::span<const Orbital> occupied);

/// Parity of the occupied modes strictly between mode_a and mode_b.
/// Requires mode_a < mode_b.
int jw_parity(Bits bits, int mode_a, int mode_b);

/// Applies exp(-i V0 dt n_up n_down) at every site.
void evolve_potential(QuantumState& state, const LatticeSpec& lattice,
                      const HubbardParams& params, double dt);

/// Applies exp(-i dt t0 (c+_{s'} c_s + c+_s c_{s'})) for one spin species on a
/// bonded pair of sites.
void evolve_hopping_pair(QuantumState& state, const LatticeSpec& lattice, int site_a,
                         int site_b, Spin spin, const HubbardParams& params, double dt);

/// Potential first, then every (bond, spin) hop in lexicographic order.
void trotter_step(QuantumState& state, const LatticeSpec& lattice,
                  const HubbardParams& params, double dt);

void trotter_evolve(QuantumState& state, const LatticeSpec& lattice,
                    const HubbardParams& params, const TrotterPlan& plan);

/// Elementary operations a full evolution performs. The parity of the modes
/// between two hopping partners is computed into a flag and uncomputed, at
/// one CNOT per intervening mode each way.
OpTally op_count(const LatticeSpec& lattice, const TrotterPlan& plan);

}  // namespace fermisim

#endif  // FERMISIM_SQ_HUBBARD_HPP_
