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

#include "fermisim/observables.hpp"

#include <cmath>
#include <string>

#include "fermisim/errors.hpp"
#include "fermisim/oracle.hpp"

namespace fermisim {

namespace {

void check_state(const QuantumState& state, const Model& model) {
  if (state.num_qubits() != model.num_qubits()) {
    throw InvalidInput("state has " + std::to_string(state.num_qubits()) +
                       " qubits but the model needs " + std::to_string(model.num_qubits()));
  }
}

void check_modes(const Model& model, std::span<const int> modes) {
  if (modes.empty() || modes.size() > 3) {
    throw InvalidInput("correlations are supported for 1 to 3 modes");
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= model.num_modes()) {
      throw InvalidInput("mode index " + std::to_string(modes[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) throw InvalidInput("correlation modes must be distinct");
    }
  }
}

// Exact expectation of f over |amplitude|^2.
template <typename Fn>
double expectation(const QuantumState& state, Fn&& f) {
  double total = 0.0;
  state.for_each_entry([&](Bits b, Amplitude a) { total += std::norm(a) * f(b); });
  return total;
}

// Sample mean and standard error of f.
template <typename Fn>
Estimate sampled_mean(const std::map<Bits, std::uint64_t>& counts, std::uint64_t trials,
                      Fn&& f) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& [b, c] : counts) {
    const double v = f(b);
    sum += v * static_cast<double>(c);
    sum_sq += v * v * static_cast<double>(c);
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return Estimate{mean, std::sqrt(var / n)};
}

double product_of_counts(const Model& model, Bits b, std::span<const int> modes) {
  const std::vector<int> counts = mode_counts(model, b);
  double p = 1.0;
  for (int m : modes) p *= counts[static_cast<std::size_t>(m)];
  return p;
}

void check_particle(const Model& model, int particle) {
  if (model.formalism != Formalism::kFirst) {
    throw InvalidInput("per-particle observables need a first-quantized state");
  }
  if (particle < 0 || particle >= model.particles) {
    throw InvalidInput("particle index out of range");
  }
}

double rounded_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return std::ceil(x);
}

}  // namespace

Model Model::second_quantized(LatticeSpec lattice, HubbardParams params) {
  lattice.validate();
  params.validate();
  return Model{Formalism::kSecond, std::move(lattice), 0, params};
}

Model Model::first_quantized(int sites, int particles, HubbardParams params) {
  params.validate();
  FirstQuantizedLayout check(sites, particles);
  return Model{Formalism::kFirst, LatticeSpec::open_chain(sites), particles, params};
}

int Model::num_qubits() const {
  return formalism == Formalism::kSecond ? num_modes() : fq_layout().num_qubits();
}

FirstQuantizedLayout Model::fq_layout() const {
  return FirstQuantizedLayout(lattice.sites, particles);
}

void SamplingPlan::validate() const {
  if (trials < 1) throw InvalidInput("sampling needs at least one trial");
  if (!(epsilon > 0.0)) throw InvalidInput("sampling accuracy epsilon must be positive");
}

std::map<Bits, double> Histogram::frequencies() const {
  std::map<Bits, double> out;
  for (const auto& [b, c] : counts) {
    out[b] = static_cast<double>(c) / static_cast<double>(trials);
  }
  return out;
}

std::vector<int> mode_counts(const Model& model, Bits basis) {
  std::vector<int> counts(static_cast<std::size_t>(model.num_modes()), 0);
  if (model.formalism == Formalism::kSecond) {
    for (int m = 0; m < model.num_modes(); ++m) {
      counts[static_cast<std::size_t>(m)] = static_cast<int>((basis >> m) & 1U);
    }
  } else {
    const int w = model.fq_layout().word_width();
    for (int k = 0; k < model.particles; ++k) {
      ++counts[read_field(basis, k * w, w)];
    }
  }
  return counts;
}

std::vector<double> charge_density_exact(const QuantumState& state, const Model& model) {
  check_state(state, model);
  std::vector<double> density(static_cast<std::size_t>(model.sites()), 0.0);
  state.for_each_entry([&](Bits b, Amplitude a) {
    const std::vector<int> counts = mode_counts(model, b);
    for (int s = 0; s < model.sites(); ++s) {
      density[static_cast<std::size_t>(s)] +=
          std::norm(a) * (counts[static_cast<std::size_t>(2 * s)] +
                          counts[static_cast<std::size_t>(2 * s + 1)]);
    }
  });
  return density;
}

std::vector<Estimate> charge_density_sampled(const QuantumState& state, const Model& model,
                                             const SamplingPlan& plan) {
  check_state(state, model);
  plan.validate();
  const auto counts = sample(state, plan.seed, plan.trials);
  std::vector<Estimate> out;
  for (int s = 0; s < model.sites(); ++s) {
    out.push_back(sampled_mean(counts, plan.trials, [&](Bits b) {
      const std::vector<int> c = mode_counts(model, b);
      return static_cast<double>(c[static_cast<std::size_t>(2 * s)] +
                                 c[static_cast<std::size_t>(2 * s + 1)]);
    }));
  }
  return out;
}

double correlation_exact(const QuantumState& state, const Model& model,
                         std::span<const int> modes) {
  check_state(state, model);
  check_modes(model, modes);
  return expectation(state, [&](Bits b) { return product_of_counts(model, b, modes); });
}

Estimate correlation_sampled(const QuantumState& state, const Model& model,
                             std::span<const int> modes, const SamplingPlan& plan) {
  check_state(state, model);
  check_modes(model, modes);
  plan.validate();
  const auto counts = sample(state, plan.seed, plan.trials);
  return sampled_mean(counts, plan.trials,
                      [&](Bits b) { return product_of_counts(model, b, modes); });
}

double pair_correlation_exact(const QuantumState& state, const Model& model, int mode_i,
                              int mode_j) {
  if (mode_i == mode_j) throw InvalidInput("pair correlation needs two distinct modes");
  const int modes[] = {mode_i, mode_j};
  return correlation_exact(state, model, modes);
}

Estimate pair_correlation_sampled(const QuantumState& state, const Model& model, int mode_i,
                                  int mode_j, const SamplingPlan& plan) {
  if (mode_i == mode_j) throw InvalidInput("pair correlation needs two distinct modes");
  const int modes[] = {mode_i, mode_j};
  return correlation_sampled(state, model, modes, plan);
}

std::vector<double> momentum_distribution_exact(const QuantumState& state, const Model& model,
                                                int particle) {
  check_state(state, model);
  check_particle(model, particle);
  QuantumState copy = state;
  const std::string name = "x" + std::to_string(particle);
  copy.apply_qft(name, true);
  const Register& reg = copy.layout().at(name);
  std::vector<double> weights(static_cast<std::size_t>(model.sites()), 0.0);
  copy.for_each_entry([&](Bits b, Amplitude a) { weights[reg.read(b)] += std::norm(a); });
  return weights;
}

Histogram momentum_distribution_sampled(const QuantumState& state, const Model& model,
                                        int particle, const SamplingPlan& plan) {
  check_state(state, model);
  check_particle(model, particle);
  plan.validate();
  QuantumState copy = state;
  const std::string name = "x" + std::to_string(particle);
  copy.apply_qft(name, true);
  const Register& reg = copy.layout().at(name);
  Histogram h;
  h.trials = plan.trials;
  for (const auto& [b, c] : sample(copy, plan.seed, plan.trials)) h.counts[reg.read(b)] += c;
  return h;
}

Histogram position_histogram(const QuantumState& state, const Model& model, int particle,
                             const SamplingPlan& plan) {
  check_state(state, model);
  check_particle(model, particle);
  plan.validate();
  const Register& reg = state.layout().at("x" + std::to_string(particle));
  Histogram h;
  h.trials = plan.trials;
  for (const auto& [b, c] : sample(state, plan.seed, plan.trials)) {
    h.counts[reg.read(b) + 1] += c;  // 1-based site
  }
  return h;
}

EnergyReport expected_energy(const QuantumState& state, const Model& model) {
  check_state(state, model);
  const oracle::Vector v = oracle::to_vector(state);
  auto expect = [&](const oracle::DenseMatrix& h) {
    if (h.dim() != v.size()) throw InvalidInput("Hamiltonian dimension does not match the state");
    return (v.adjoint() * h.values * v)(0, 0).real();
  };
  HubbardParams kinetic_only = model.params;
  kinetic_only.v0 = 0.0;

  EnergyReport report;
  if (model.formalism == Formalism::kSecond) {
    report.total = expect(oracle::build_sq_hamiltonian(model.lattice, model.params));
    report.kinetic = expect(oracle::build_sq_hamiltonian(model.lattice, kinetic_only));
  } else {
    const FirstQuantizedLayout layout = model.fq_layout();
    report.total = expect(oracle::build_fq_hamiltonian(layout, model.params));
    report.kinetic = expect(oracle::build_fq_hamiltonian(layout, kinetic_only));
  }
  for (int s = 0; s < model.sites(); ++s) {
    report.potential += model.params.v0 * pair_correlation_exact(state, model, 2 * s, 2 * s + 1);
  }
  return report;
}

std::uint64_t required_trials(double epsilon) { return required_trials(epsilon, 1.0, 0); }

std::uint64_t required_trials(double epsilon, double delta, int k) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInput("accuracy epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0) || k < 0) throw InvalidInput("invalid histogram density or order");
  return static_cast<std::uint64_t>(rounded_ceil(std::pow(delta, k) / (epsilon * epsilon)));
}

}  // namespace fermisim
