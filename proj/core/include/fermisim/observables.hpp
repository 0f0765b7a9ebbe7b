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

// Observables computed either exactly from amplitudes or by Born sampling.
// Both formalisms reduce to per-mode particle counts, where mode
// 2(s-1) + spin coincides with the first-quantized label minus one.

#ifndef FERMISIM_OBSERVABLES_HPP_
#define FERMISIM_OBSERVABLES_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fermisim/fq_hubbard.hpp"
#include "fermisim/sq_hubbard.hpp"
#include "fermisim/state.hpp"

namespace fermisim {

enum class Formalism { kFirst, kSecond };

/// Identifies the Hubbard instance a state belongs to.
struct Model {
  Formalism formalism = Formalism::kSecond;
  LatticeSpec lattice;
  int particles = 0;  ///< first-quantized only
  HubbardParams params;

  static Model second_quantized(LatticeSpec lattice, HubbardParams params);
  static Model first_quantized(int sites, int particles, HubbardParams params);

  int sites() const { return lattice.sites; }
  int num_modes() const { return 2 * lattice.sites; }
  int num_qubits() const;
  FirstQuantizedLayout fq_layout() const;
};

struct SamplingPlan {
  std::uint64_t trials = 1;
  RngSeed seed;
  double epsilon = 0.1;  ///< target accuracy, informational
  double delta = 1.0;    ///< histogram point density, informational

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  ///< standard error of the sample mean
};

struct Histogram {
  std::map<Bits, std::uint64_t> counts;
  std::uint64_t trials = 0;

  std::map<Bits, double> frequencies() const;
};

/// Particle count in each mode for one basis string.
std::vector<int> mode_counts(const Model& model, Bits basis);

/// Expected number of particles per site (index 0 = site 1).
std::vector<double> charge_density_exact(const QuantumState& state, const Model& model);
std::vector<Estimate> charge_density_sampled(const QuantumState& state, const Model& model,
                                             const SamplingPlan& plan);

/// <n_i n_j> for distinct modes.
double pair_correlation_exact(const QuantumState& state, const Model& model, int mode_i,
                              int mode_j);
Estimate pair_correlation_sampled(const QuantumState& state, const Model& model, int mode_i,
                                  int mode_j, const SamplingPlan& plan);

/// <n_a n_b ...> over 1 to 3 distinct modes.
double correlation_exact(const QuantumState& state, const Model& model,
                         std::span<const int> modes);
Estimate correlation_sampled(const QuantumState& state, const Model& model,
                             std::span<const int> modes, const SamplingPlan& plan);

/// Momentum distribution of one particle of a first-quantized state. The
/// position register is Fourier transformed on a copy so that the plane wave
/// exp(2 pi i k x / m) lands in bin k (physical momentum 2 pi k / m).
/// Second-quantized input is rejected.
std::vector<double> momentum_distribution_exact(const QuantumState& state, const Model& model,
                                                int particle);
Histogram momentum_distribution_sampled(const QuantumState& state, const Model& model,
                                        int particle, const SamplingPlan& plan);

/// Histogram of one particle's site over sampled trials (first quantized).
Histogram position_histogram(const QuantumState& state, const Model& model, int particle,
                             const SamplingPlan& plan);

struct EnergyReport {
  double total = 0.0;      ///< <psi|H|psi> from the dense Hamiltonian
  double potential = 0.0;  ///< V0 * sum_s <n_{s,up} n_{s,down}>
  double kinetic = 0.0;    ///< hopping expectation
};

EnergyReport expected_energy(const QuantumState& state, const Model& model);

/// ceil(1 / epsilon^2) trials for accuracy epsilon in (0, 1).
std::uint64_t required_trials(double epsilon);
/// ceil(delta^k / epsilon^2) for k-point histograms with point density delta.
std::uint64_t required_trials(double epsilon, double delta, int k);

}  // namespace fermisim

#endif  // FERMISIM_OBSERVABLES_HPP_
