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

// Exact dense references: Hamiltonians built from Jordan-Wigner matrices (second
// quantization) and from per-particle tensor products (first quantization),
// eigendecomposition propagators, the Slater antisymmetrizer, and the map
// from antisymmetric first-quantized states to occupation vectors.

#ifndef FERMISIM_ORACLE_HPP_
#define FERMISIM_ORACLE_HPP_

#include <Eigen/Dense>
#include <map>
#include <span>
#include <vector>

#include "fermisim/fq_hubbard.hpp"
#include "fermisim/sq_hubbard.hpp"
#include "fermisim/state.hpp"

namespace fermisim::oracle {

using Vector = Eigen::VectorXcd;

/// Square complex matrix.
struct DenseMatrix {
  Eigen::MatrixXcd values;

  Eigen::Index dim() const { return values.rows(); }
  bool is_hermitian(double tol = 1e-14) const;
};

/// Annihilation operator c_j on `modes` modes, with the Jordan-Wigner string
/// over modes below j. Basis index bit q = occupation of mode q.
DenseMatrix annihilation(int modes, int mode);
DenseMatrix number_operator(int modes, int mode);

/// Eq.-1 style Hubbard Hamiltonian on 2m modes (mode = 2(s-1) + spin).
/// Requires 2m <= 12.
DenseMatrix build_sq_hamiltonian(const LatticeSpec& lattice, const HubbardParams& params);

/// t0 (c+_b c_a + c+_a c_b) for one (bond, spin).
DenseMatrix build_hopping_term(const LatticeSpec& lattice, int site_a, int site_b, Spin spin,
                               const HubbardParams& params);

/// Single-particle chain hopping matrix on 2m labels (t0 between
/// neighbouring sites of equal spin). Index = label - 1.
DenseMatrix single_particle_kinetic(int sites, const HubbardParams& params);

/// First-quantized Hamiltonian on (2m)^n states: sum_k T_k plus V0 for every
/// unordered particle pair on the same site with opposite spins. The basis
/// index matches FirstQuantizedLayout bit order. Requires (2m)^n <= 4096.
DenseMatrix build_fq_hamiltonian(const FirstQuantizedLayout& layout,
                                 const HubbardParams& params);

/// Cached eigendecomposition H = V diag(E) V^dagger.
class Propagator {
 public:
  /// Throws InvalidInput if H is not Hermitian within 1e-12.
  explicit Propagator(const DenseMatrix& hamiltonian);

  /// exp(-i H t) v.
  Vector apply(double time, const Vector& v) const;
  DenseMatrix unitary(double time) const;
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

Vector expm_propagate(const DenseMatrix& hamiltonian, double time, const Vector& v);

/// sum_sigma sgn(sigma)/sqrt(n!) |sigma(labels)>, keyed by label tuple.
std::map<std::vector<int>, double> slater_antisymmetrize(std::span<const int> labels);

/// Dense amplitude vector of a state (index = basis value).
Vector to_vector(const QuantumState& state);
QuantumState from_vector(const RegisterLayout& layout, const Vector& v,
                         Backend backend = Backend::kDense);

/// Maps an antisymmetric first-quantized state to the occupation-number
/// vector over 2m modes: the set {lambda_1 < ... < lambda_n} goes to the
/// occupation string with modes lambda_i - 1 set, with coefficient
/// sqrt(n!) times the amplitude of the sorted tuple. Throws InvalidInput if the
/// input is not antisymmetric within 1e-9.
Vector fq_to_sq(const QuantumState& state, const FirstQuantizedLayout& layout);

/// Orthonormal basis of the antisymmetric sector, one Slater vector per
/// increasing label tuple (columns in lexicographic tuple order).
Eigen::MatrixXcd antisymmetric_basis(const FirstQuantizedLayout& layout);

/// Indices of occupation strings over `modes` with exactly `particles` bits.
std::vector<Eigen::Index> number_sector(int modes, int particles);

/// Ascending eigenvalues of P^dagger H P for an isometry P.
Eigen::VectorXd restricted_spectrum(const DenseMatrix& hamiltonian, const Eigen::MatrixXcd& basis);

}  // namespace fermisim::oracle

#endif  // FERMISIM_ORACLE_HPP_
