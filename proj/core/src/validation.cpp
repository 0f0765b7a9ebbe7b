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

#include "fermisim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "fermisim/antisym.hpp"
#include "fermisim/errors.hpp"
#include "fermisim/fq_hubbard.hpp"
#include "fermisim/oracle.hpp"

namespace fermisim::validation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckRow row(std::string name, double measured, double lower, double upper) {
  const bool pass = std::isfinite(measured) && measured >= lower && measured <= upper;
  return CheckRow{std::move(name), measured, lower, upper, pass};
}

const HubbardParams kConvergenceParams{4.0, 1.0};
constexpr double kConvergenceTime = 1.0;

void for_each_increasing(int n, int max_label, const std::function<void(std::vector<int>&)>& f) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    f(labels);
    int i = n - 1;
    while (i >= 0 && labels[static_cast<std::size_t>(i)] == max_label - (n - 1 - i)) --i;
    if (i < 0) return;
    ++labels[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      labels[static_cast<std::size_t>(j)] = labels[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

double slater_fidelity(const QuantumState& particles, const QuWordLayout& words,
                       std::span<const int> labels) {
  Amplitude overlap{0.0, 0.0};
  for (const auto& [tuple, coeff] : oracle::slater_antisymmetrize(labels)) {
    Bits basis = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      basis = write_field(basis, static_cast<int>(k) * words.word_width(), words.word_width(),
                          static_cast<Bits>(tuple[k] - 1));
    }
    overlap += coeff * particles.amplitude(basis);
  }
  return std::norm(overlap);
}

SuiteReport antisym_suite() {
  SuiteReport report{"antisym", {}};
  for (int n = 1; n <= 3; ++n) {
    const QuWordLayout words{3, n, false};
    const RegisterBank bank(words);
    double worst_fidelity = 1.0;
    double worst_norm = 0.0;
    double worst_sign = 0.0;
    double worst_symmetric = 0.0;
    int dirty = 0;
    int cases = 0;
    for_each_increasing(n, words.max_label(), [&](std::vector<int>& labels) {
      ++cases;
      QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{labels});
      antisymmetrize(state, bank, Statistics::kFermi);
      state.for_each_entry([&](Bits b, Amplitude) { dirty += bank.ancillas_clear(b) ? 0 : 1; });
      if (dirty > 0) return;
      const QuantumState out = extract_particles(state, bank);
      worst_fidelity = std::min(worst_fidelity, slater_fidelity(out, words, labels));
      worst_norm = std::max(worst_norm, std::abs(out.norm() - 1.0));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) worst_sign = std::max(worst_sign, transposition_test(out, words, i, j));
      }
      const WeightedConfiguration wc{OrderedConfiguration{labels}, {1.0, 0.0}};
      const QuantumState sym =
          antisymmetrized_state(bank, std::span(&wc, 1), Statistics::kBose);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          worst_symmetric = std::max(worst_symmetric, symmetric_transposition_test(sym, words, i, j));
        }
      }
    });
    const std::string tag = "n=" + std::to_string(n) + " (" + std::to_string(cases) + " cases)";
    report.rows.push_back(row(tag + " dirty ancilla branches", dirty, 0, 0));
    report.rows.push_back(row(tag + " min fidelity", worst_fidelity, 1.0 - 1e-10, kInf));
    report.rows.push_back(row(tag + " max norm error", worst_norm, 0, 1e-10));
    report.rows.push_back(row(tag + " max sign-law violation", worst_sign, 0, 1e-10));
    report.rows.push_back(row(tag + " max boson symmetry violation", worst_symmetric, 0, 1e-10));
  }
  return report;
}

SuiteReport convergence_suite(std::string suite, double (*error)(const HubbardParams&, double, int),
                              double final_bound) {
  SuiteReport report{std::move(suite), {}};
  std::vector<double> errors;
  for (int r : {32, 64, 128, 256}) errors.push_back(error(kConvergenceParams, kConvergenceTime, r));
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const int r = 32 << i;
    report.rows.push_back(row("e(" + std::to_string(r) + ")/e(" + std::to_string(2 * r) + ")",
                              errors[i] / errors[i + 1], 1.8, 2.2));
  }
  report.rows.push_back(row("e(256)", errors.back(), 0, final_bound));
  return report;
}

std::vector<Orbital> orbitals_from_modes(const ModeLayout& modes, std::span<const int> chosen) {
  std::vector<Orbital> out;
  for (int m : chosen) out.push_back(modes.orbital(m));
  return out;
}

SuiteReport crossform_suite() {
  SuiteReport report{"crossform", {}};
  const HubbardParams param_sets[] = {{4.0, 1.0}, {1.0, 0.5}, {0.0, 1.0}, {2.5, -0.7}};
  const double times[] = {0.3, 1.0};
  for (int m : {2, 4}) {
    const LatticeSpec lattice = LatticeSpec::open_chain(m);
    const ModeLayout modes(m);
    for (int n = 1; n <= 3; ++n) {
      const FirstQuantizedLayout layout(m, n);
      double worst_map = 0.0;
      double worst_spectrum = 0.0;
      for (const HubbardParams& params : param_sets) {
        const oracle::Propagator fq(oracle::build_fq_hamiltonian(layout, params));
        const oracle::Propagator sq(oracle::build_sq_hamiltonian(lattice, params));
        // Spectrum of the antisymmetric sector against the n-particle sector.
        const Eigen::VectorXd fq_levels = oracle::restricted_spectrum(
            oracle::build_fq_hamiltonian(layout, params), oracle::antisymmetric_basis(layout));
        const auto sector = oracle::number_sector(2 * m, n);
        Eigen::MatrixXcd sector_basis = Eigen::MatrixXcd::Zero(std::int64_t{1} << (2 * m),
                                                               static_cast<Eigen::Index>(sector.size()));
        for (std::size_t c = 0; c < sector.size(); ++c) {
          sector_basis(sector[c], static_cast<Eigen::Index>(c)) = 1.0;
        }
        const Eigen::VectorXd sq_levels = oracle::restricted_spectrum(
            oracle::build_sq_hamiltonian(lattice, params), sector_basis);
        if (fq_levels.size() != sq_levels.size()) {
          worst_spectrum = kInf;
        } else {
          worst_spectrum = std::max(worst_spectrum, (fq_levels - sq_levels).cwiseAbs().maxCoeff());
        }
        // A few initial occupations per (m, n).
        int seen = 0;
        for_each_increasing(n, 2 * m, [&](std::vector<int>& chosen) {
          if (seen++ % 3 != 0) return;
          std::vector<int> zero_based;
          for (int c : chosen) zero_based.push_back(c - 1);
          const auto occupied = orbitals_from_modes(modes, zero_based);
          const QuantumState start = prepare_first_quantized(layout, occupied);
          const oracle::Vector v0 = oracle::to_vector(start);
          const oracle::Vector mapped0 = oracle::fq_to_sq(start, layout);
          for (double t : times) {
            const QuantumState evolved =
                oracle::from_vector(layout.register_layout(), fq.apply(t, v0));
            const oracle::Vector lhs = oracle::fq_to_sq(evolved, layout);
            const oracle::Vector rhs = sq.apply(t, mapped0);
            worst_map = std::max(worst_map, (lhs - rhs).norm());
          }
        });
      }
      const std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      report.rows.push_back(row(tag + " intertwining error", worst_map, 0, 1e-10));
      report.rows.push_back(row(tag + " spectrum mismatch", worst_spectrum, 0, 1e-10));
    }
  }
  return report;
}

SuiteReport scaling_suite() {
  SuiteReport report{"scaling", {}};
  const TrotterPlan plan{1.0, 1};
  for (int m : {4, 8, 16}) {
    const double small = static_cast<double>(op_count(LatticeSpec::open_chain(m), plan).total());
    const double large = static_cast<double>(op_count(LatticeSpec::open_chain(2 * m), plan).total());
    report.rows.push_back(row("second-quantized count(" + std::to_string(2 * m) + ")/count(" +
                                  std::to_string(m) + ")",
                              large / small, 0, 4.5));
  }
  for (int b : {1, 2, 3}) {
    const FirstQuantizedLayout small_layout(1 << b, 1);
    const FirstQuantizedLayout large_layout(1 << (2 * b), 1);
    const double small = static_cast<double>(kinetic_op_count(small_layout).total());
    const double large = static_cast<double>(kinetic_op_count(large_layout).total());
    report.rows.push_back(row("first-quantized kinetic count(b=" + std::to_string(2 * b) +
                                  ")/count(b=" + std::to_string(b) + ")",
                              large / small, 0, 4.5));
  }
  return report;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"antisym", "trotter-sq", "trotter-fq",
                                                 "crossform", "scaling"};
  return names;
}

double trotter_error_sq(const HubbardParams& params, double time, int steps) {
  const LatticeSpec lattice = LatticeSpec::open_chain(2);
  const ModeLayout modes(2);
  const Orbital occupied[] = {{1, Spin::kUp}, {2, Spin::kDown}};
  const BasisString start = encode_occupation(modes, occupied);
  QuantumState state = QuantumState::basis(modes.register_layout(), start, Backend::kDense);
  const oracle::Vector exact = oracle::expm_propagate(
      oracle::build_sq_hamiltonian(lattice, params), time, oracle::to_vector(state));
  trotter_evolve(state, lattice, params, TrotterPlan{time, steps});
  return (oracle::to_vector(state) - exact).norm();
}

double trotter_error_fq(const HubbardParams& params, double time, int steps) {
  const FirstQuantizedLayout layout(4, 2);
  const Orbital occupied[] = {{1, Spin::kUp}, {2, Spin::kDown}};
  QuantumState state = prepare_first_quantized(layout, occupied);
  const oracle::Vector exact = oracle::expm_propagate(
      oracle::build_fq_hamiltonian(layout, params), time, oracle::to_vector(state));
  trotter_evolve_fq(state, layout, params, TrotterPlan{time, steps});
  return (oracle::to_vector(state) - exact).norm();
}

SuiteReport run_suite(std::string_view name) {
  if (name == "antisym") return antisym_suite();
  if (name == "trotter-sq") return convergence_suite("trotter-sq", &trotter_error_sq, 2e-3);
  if (name == "trotter-fq") return convergence_suite("trotter-fq", &trotter_error_fq, 2e-2);
  if (name == "crossform") return crossform_suite();
  if (name == "scaling") return scaling_suite();
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw InvalidInput("unknown validation suite '" + std::string(name) + "' (known: " + known + ")");
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  char line[256];
  for (const CheckRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%-4s  %-52s  %.6g  in [%.3g, %.3g]\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.lower, r.upper);
    out << line;
  }
  out << report.suite << ": " << (report.passed() ? "all checks passed" : "FAILED") << '\n';
  return out.str();
}

}  // namespace fermisim::validation
