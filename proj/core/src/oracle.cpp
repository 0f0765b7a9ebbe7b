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

#include "fermisim/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

#include "fermisim/errors.hpp"

namespace fermisim::oracle {

namespace {

using Index = Eigen::Index;

struct Term {
  double sign;
  Bits basis;
};

// c_j |i>, with the Jordan-Wigner string over modes below j.
std::optional<Term> annihilate(Bits i, int j) {
  if (((i >> j) & 1U) == 0) return std::nullopt;
  const double sign = (std::popcount(i & low_mask(j)) % 2 == 0) ? 1.0 : -1.0;
  return Term{sign, i ^ (Bits{1} << j)};
}

// c+_j |i>.
std::optional<Term> create(Bits i, int j) {
  if (((i >> j) & 1U) != 0) return std::nullopt;
  const double sign = (std::popcount(i & low_mask(j)) % 2 == 0) ? 1.0 : -1.0;
  return Term{sign, i | (Bits{1} << j)};
}

// Adds coeff * c+_to c_from into H, column by column.
void add_hop(Eigen::MatrixXcd& h, int from, int to, double coeff) {
  for (Index col = 0; col < h.cols(); ++col) {
    auto after_c = annihilate(static_cast<Bits>(col), from);
    if (!after_c) continue;
    auto after_cdag = create(after_c->basis, to);
    if (!after_cdag) continue;
    h(static_cast<Index>(after_cdag->basis), col) += coeff * after_c->sign * after_cdag->sign;
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int inversion_parity(const std::vector<int>& values) {
  int inversions = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] > values[j]) ++inversions;
    }
  }
  return inversions % 2;
}

Index fq_index(const std::vector<int>& labels, int single_dim) {
  Index index = 0;
  for (std::size_t k = labels.size(); k-- > 0;) index = index * single_dim + (labels[k] - 1);
  return index;
}

}  // namespace

bool DenseMatrix::is_hermitian(double tol) const {
  if (values.rows() != values.cols()) return false;
  return (values - values.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DenseMatrix annihilation(int modes, int mode) {
  if (modes < 1 || modes > 12 || mode < 0 || mode >= modes) {
    throw InvalidInput("annihilation operator needs 0 <= mode < modes <= 12");
  }
  const Index dim = Index{1} << modes;
  DenseMatrix c{Eigen::MatrixXcd::Zero(dim, dim)};
  for (Index col = 0; col < dim; ++col) {
    if (auto t = annihilate(static_cast<Bits>(col), mode)) {
      c.values(static_cast<Index>(t->basis), col) = t->sign;
    }
  }
  return c;
}

DenseMatrix number_operator(int modes, int mode) {
  const DenseMatrix c = annihilation(modes, mode);
  return DenseMatrix{c.values.adjoint() * c.values};
}

DenseMatrix build_sq_hamiltonian(const LatticeSpec& lattice, const HubbardParams& params) {
  lattice.validate();
  params.validate();
  const ModeLayout modes(lattice.sites);
  if (modes.num_modes() > 12) throw InvalidInput("dense Hamiltonian limited to 12 modes");
  const Index dim = Index{1} << modes.num_modes();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 1; s <= lattice.sites; ++s) {
    const int up = modes.mode(s, Spin::kUp);
    const int down = modes.mode(s, Spin::kDown);
    for (Index i = 0; i < dim; ++i) {
      if (((i >> up) & 1) && ((i >> down) & 1)) h(i, i) += params.v0;
    }
  }
  for (const auto& [a, b] : lattice.bonds) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      const int ma = modes.mode(a, spin);
      const int mb = modes.mode(b, spin);
      add_hop(h, ma, mb, params.t0);
      add_hop(h, mb, ma, params.t0);
    }
  }
  return DenseMatrix{std::move(h)};
}

DenseMatrix build_hopping_term(const LatticeSpec& lattice, int site_a, int site_b, Spin spin,
                               const HubbardParams& params) {
  lattice.validate();
  if (!lattice.adjacent(site_a, site_b)) throw InvalidInput("sites are not neighbours");
  const ModeLayout modes(lattice.sites);
  if (modes.num_modes() > 12) throw InvalidInput("dense Hamiltonian limited to 12 modes");
  const Index dim = Index{1} << modes.num_modes();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const int ma = modes.mode(site_a, spin);
  const int mb = modes.mode(site_b, spin);
  add_hop(h, ma, mb, params.t0);
  add_hop(h, mb, ma, params.t0);
  return DenseMatrix{std::move(h)};
}

DenseMatrix single_particle_kinetic(int sites, const HubbardParams& params) {
  const Index dim = 2 * sites;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  for (int x = 1; x < sites; ++x) {
    for (int spin = 0; spin < 2; ++spin) {
      const Index i = 2 * (x - 1) + spin;
      const Index j = 2 * x + spin;
      t(i, j) = params.t0;
      t(j, i) = params.t0;
    }
  }
  return DenseMatrix{std::move(t)};
}

DenseMatrix build_fq_hamiltonian(const FirstQuantizedLayout& layout,
                                 const HubbardParams& params) {
  params.validate();
  const int single = 2 * layout.sites();
  const int n = layout.particles();
  Index dim = 1;
  for (int k = 0; k < n; ++k) dim *= single;
  if (dim > 4096) throw InvalidInput("dense first-quantized Hamiltonian limited to 4096 states");

  const Eigen::MatrixXcd t = single_particle_kinetic(layout.sites(), params).values;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index col = 0; col < dim; ++col) {
    Index rest = col;
    for (int k = 0; k < n; ++k) {
      labels[static_cast<std::size_t>(k)] = static_cast<int>(rest % single) + 1;
      rest /= single;
    }
    for (int k = 0; k < n; ++k) {
      const int from = labels[static_cast<std::size_t>(k)];
      for (int to = 1; to <= single; ++to) {
        const auto amp = t(to - 1, from - 1);
        if (amp == Amplitude{}) continue;
        std::vector<int> moved = labels;
        moved[static_cast<std::size_t>(k)] = to;
        h(fq_index(moved, single), col) += amp;
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const Orbital a = FirstQuantizedLayout::orbital(labels[static_cast<std::size_t>(k)]);
        const Orbital b = FirstQuantizedLayout::orbital(labels[static_cast<std::size_t>(l)]);
        if (a.site == b.site && a.spin != b.spin) h(col, col) += params.v0;
      }
    }
  }
  return DenseMatrix{std::move(h)};
}

Propagator::Propagator(const DenseMatrix& hamiltonian) {
  if (!hamiltonian.is_hermitian(1e-12)) throw InvalidInput("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.values);
  if (solver.info() != Eigen::Success) throw InvariantViolation("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Vector Propagator::apply(double time, const Vector& v) const {
  if (v.size() != eigenvalues_.size()) throw InvalidInput("vector dimension mismatch");
  Vector coeffs = eigenvectors_.adjoint() * v;
  for (Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -eigenvalues_(i) * time);
  }
  return eigenvectors_ * coeffs;
}

DenseMatrix Propagator::unitary(double time) const {
  Eigen::VectorXcd phases(eigenvalues_.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -eigenvalues_(i) * time);
  return DenseMatrix{eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint()};
}

Vector expm_propagate(const DenseMatrix& hamiltonian, double time, const Vector& v) {
  return Propagator(hamiltonian).apply(time, v);
}

std::map<std::vector<int>, double> slater_antisymmetrize(std::span<const int> labels) {
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] <= labels[i - 1]) {
      throw InvalidInput("Slater antisymmetrizer needs strictly increasing labels");
    }
  }
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  const double norm = 1.0 / std::sqrt(factorial(static_cast<int>(labels.size())));
  std::map<std::vector<int>, double> out;
  do {
    std::vector<int> tuple;
    for (int idx : order) tuple.push_back(labels[static_cast<std::size_t>(idx)]);
    out[tuple] = inversion_parity(order) == 0 ? norm : -norm;
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

Vector to_vector(const QuantumState& state) {
  if (state.num_qubits() > kMaxDenseQubits) throw InvalidInput("state too wide for a dense vector");
  Vector v = Vector::Zero(Index{1} << state.num_qubits());
  state.for_each_entry([&](Bits b, Amplitude a) { v(static_cast<Index>(b)) = a; });
  return v;
}

QuantumState from_vector(const RegisterLayout& layout, const Vector& v, Backend backend) {
  if (v.size() != (Index{1} << layout.num_qubits())) {
    throw InvalidInput("vector dimension does not match layout");
  }
  std::vector<BasisAmplitude> entries;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) != Amplitude{}) entries.push_back({static_cast<Bits>(i), v(i)});
  }
  return QuantumState::from_amplitudes(layout, entries, backend);
}

Vector fq_to_sq(const QuantumState& state, const FirstQuantizedLayout& layout) {
  if (!(state.layout() == layout.register_layout())) {
    throw InvalidInput("state layout does not match the first-quantized layout");
  }
  const QuWordLayout words = layout.word_layout();
  const int n = layout.particles();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (transposition_test(state, words, i, j) > 1e-9) {
        throw InvalidInput("fq_to_sq requires an antisymmetric state");
      }
    }
  }
  const int modes = 2 * layout.sites();
  if (modes > kMaxDenseQubits) throw InvalidInput("too many modes for a dense occupation vector");
  const double scale = std::sqrt(factorial(n));
  const int w = layout.word_width();
  Vector out = Vector::Zero(Index{1} << modes);
  state.for_each_entry([&](Bits b, Amplitude a) {
    Bits previous = 0;
    Bits occupation = 0;
    for (int k = 0; k < n; ++k) {
      const Bits word = read_field(b, k * w, w);
      if (k > 0 && word <= previous) return;  // only sorted tuples carry the sign convention
      previous = word;
      occupation |= Bits{1} << word;
    }
    out(static_cast<Index>(occupation)) = scale * a;
  });
  return out;
}

Eigen::MatrixXcd antisymmetric_basis(const FirstQuantizedLayout& layout) {
  const int single = 2 * layout.sites();
  const int n = layout.particles();
  Index dim = 1;
  for (int k = 0; k < n; ++k) dim *= single;
  std::vector<std::vector<int>> tuples;
  std::vector<int> current;
  std::function<void(int)> choose = [&](int next) {
    if (static_cast<int>(current.size()) == n) {
      tuples.push_back(current);
      return;
    }
    for (int label = next; label <= single; ++label) {
      current.push_back(label);
      choose(label + 1);
      current.pop_back();
    }
  };
  choose(1);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, static_cast<Index>(tuples.size()));
  for (std::size_t c = 0; c < tuples.size(); ++c) {
    for (const auto& [tuple, amp] : slater_antisymmetrize(tuples[c])) {
      basis(fq_index(tuple, single), static_cast<Index>(c)) = amp;
    }
  }
  return basis;
}

std::vector<Eigen::Index> number_sector(int modes, int particles) {
  std::vector<Index> out;
  for (Index i = 0; i < (Index{1} << modes); ++i) {
    if (std::popcount(static_cast<Bits>(i)) == particles) out.push_back(i);
  }
  return out;
}

Eigen::VectorXd restricted_spectrum(const DenseMatrix& hamiltonian,
                                    const Eigen::MatrixXcd& basis) {
  const Eigen::MatrixXcd reduced = basis.adjoint() * hamiltonian.values * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace fermisim::oracle
