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

// Amplitude-level quantum state with interchangeable dense and sparse storage.
//
// Bit convention: qubit q of a basis string is bit q of its integer value
// (bit 0 least significant). Registers listed earlier in a RegisterLayout
// occupy lower qubit indices, and bit 0 of a register is its least
// significant bit.

#ifndef FERMISIM_STATE_HPP_
#define FERMISIM_STATE_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fermisim {

using Amplitude = std::complex<double>;
using Bits = std::uint64_t;

inline constexpr int kMaxQubits = 64;
inline constexpr int kMaxDenseQubits = 26;

/// Fixed-width computational basis label.
class BasisString {
 public:
  BasisString(Bits value, int width);

  /// Parses "0101"-style text, most significant (highest qubit) first.
  static BasisString parse(std::string_view text);

  Bits value() const { return value_; }
  int width() const { return width_; }
  bool bit(int qubit) const { return ((value_ >> qubit) & 1U) != 0; }
  std::string to_string() const;

  friend bool operator==(const BasisString&, const BasisString&) = default;

 private:
  Bits value_;
  int width_;
};

inline constexpr Bits low_mask(int width) {
  return width >= 64 ? ~Bits{0} : ((Bits{1} << width) - 1);
}

inline constexpr Bits read_field(Bits bits, int offset, int width) {
  return (bits >> offset) & low_mask(width);
}

inline constexpr Bits write_field(Bits bits, int offset, int width, Bits value) {
  const Bits mask = low_mask(width) << offset;
  return (bits & ~mask) | ((value << offset) & mask);
}

struct Register {
  std::string name;
  int offset = 0;
  int width = 0;

  Bits mask() const { return low_mask(width) << offset; }
  Bits read(Bits bits) const { return read_field(bits, offset, width); }
  Bits write(Bits bits, Bits value) const { return write_field(bits, offset, width, value); }

  friend bool operator==(const Register&, const Register&) = default;
};

/// Named, contiguous, disjoint qubit ranges covering 0..Q-1.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  /// Validates that the registers are disjoint, uniquely named and cover
  /// every qubit index exactly once.
  explicit RegisterLayout(std::vector<Register> registers);

  static RegisterLayout flat(int num_qubits, std::string name = "q");

  /// Appends a register directly above the current highest qubit.
  RegisterLayout& append(std::string name, int width);

  int num_qubits() const { return num_qubits_; }
  bool contains(std::string_view name) const;
  const Register& at(std::string_view name) const;
  const std::vector<Register>& registers() const { return registers_; }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<Register> registers_;
  int num_qubits_ = 0;
};

enum class Backend { kDense, kSparse };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Amplitude, 4>;

namespace gates {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 hadamard();
/// exp(-i * theta * sigma_x) = cos(theta) I - i sin(theta) sigma_x.
Matrix2 exp_sigma_x(double theta);
/// Real rotation taking |0> to c0|0> + c1|1>; requires c0^2 + c1^2 = 1.
Matrix2 real_rotation(double c0, double c1);
Matrix2 adjoint(const Matrix2& u);
bool is_unitary(const Matrix2& u, double tol = 1e-12);
}  // namespace gates

struct Control {
  int qubit = 0;
  bool value = true;
};

struct BasisAmplitude {
  Bits basis = 0;
  Amplitude amplitude;
};

using BasisMap = std::function<Bits(Bits)>;
using BasisPredicate = std::function<bool(Bits)>;

/// A partial matching of basis strings. `pair_of(b)` returns the ordered pair
/// (first, second) containing b, or nothing when b is unpaired.
class TwoLevelPairing {
 public:
  using Pair = std::pair<Bits, Bits>;
  using PairFn = std::function<std::optional<Pair>(Bits)>;

  explicit TwoLevelPairing(PairFn fn) : fn_(std::move(fn)) {}

  /// Builds a pairing from an explicit list; throws InvalidInput when a basis
  /// string occurs in more than one pair or is paired with itself.
  static TwoLevelPairing from_pairs(std::vector<Pair> pairs);

  std::optional<Pair> pair_of(Bits b) const { return fn_(b); }

 private:
  PairFn fn_;
};

struct RngSeed {
  std::uint64_t value = 0;
};

class QuantumState {
 public:
  /// Basis state |bits>. Throws InvalidInput if the width differs from the
  /// layout or the dense backend would exceed kMaxDenseQubits.
  static QuantumState basis(RegisterLayout layout, const BasisString& bits,
                            Backend backend = Backend::kDense);

  /// Loads an explicit amplitude map. Repeated basis strings are summed.
  /// Throws InvalidInput unless the result is normalized within 1e-10.
  static QuantumState from_amplitudes(RegisterLayout layout,
                                      std::span<const BasisAmplitude> amplitudes,
                                      Backend backend = Backend::kDense);

  const RegisterLayout& layout() const { return layout_; }
  Backend backend() const { return backend_; }
  int num_qubits() const { return layout_.num_qubits(); }

  Amplitude amplitude(Bits basis) const;
  Amplitude amplitude(const BasisString& basis) const;

  /// Nonzero entries in ascending basis order.
  std::vector<BasisAmplitude> entries() const;
  std::size_t support_size() const;

  template <typename Fn>
  void for_each_entry(Fn&& fn) const {
    if (backend_ == Backend::kDense) {
      for (Bits b = 0; b < dense_.size(); ++b) {
        if (dense_[b] != Amplitude{}) fn(b, dense_[b]);
      }
    } else {
      for (const auto& [b, a] : sparse_) fn(b, a);
    }
  }

  double norm() const;
  QuantumState with_backend(Backend backend) const;

  // Unitary operations. Each preserves the norm; operations taking a 2x2
  // matrix reject non-unitary input (tolerance 1e-12).

  void apply_unitary(int qubit, const Matrix2& u);
  void apply_controlled_unitary(std::span<const Control> controls, int target,
                                const Matrix2& u);
  /// amplitude(b) *= exp(i theta) wherever predicate(b) holds.
  void apply_phase_if(const BasisPredicate& predicate, double theta);
  /// amplitude(b) *= -1 wherever predicate(b) holds (the theta = pi phase,
  /// applied without rounding).
  void apply_sign_if(const BasisPredicate& predicate);
  /// amplitude'(f(b)) = amplitude(b). f must be a bijection on the full basis;
  /// in validation mode this is checked exhaustively for Q <= 20.
  void apply_permutation(const BasisMap& f);
  /// Rewrites each nonzero component b to f(b). f only needs to be injective
  /// on the support, which is always checked.
  void rewrite_support(const BasisMap& f);
  /// Mixes the amplitudes of every pair (first, second) by u, acting on the
  /// vector (amplitude(first), amplitude(second)).
  void apply_two_level_mix(const TwoLevelPairing& pairing, const Matrix2& u);
  /// Quantum Fourier transform of one register:
  /// amplitude'(k) = 2^{-w/2} sum_x exp(2 pi i k x / 2^w) amplitude(x).
  /// `inverse` applies the adjoint (negative exponent).
  void apply_qft(std::string_view register_name, bool inverse = false);

  /// Replaces the storage of a state with a state over a smaller layout,
  /// without any checks. Used by callers that drop disentangled ancillas.
  static QuantumState from_trusted_entries(RegisterLayout layout,
                                           std::vector<BasisAmplitude> entries,
                                           Backend backend);

 private:
  QuantumState(RegisterLayout layout, Backend backend);

  void check_qubit(int qubit) const;
  void check_normalized(const char* op) const;
  void store(Bits b, Amplitude a);

  RegisterLayout layout_;
  Backend backend_;
  std::vector<Amplitude> dense_;
  std::map<Bits, Amplitude> sparse_;
};

/// <a|b>. Throws InvalidInput on layout mismatch.
Amplitude inner_product(const QuantumState& a, const QuantumState& b);

/// Euclidean distance between amplitude vectors.
double l2_distance(const QuantumState& a, const QuantumState& b);

/// Largest |a(b) - b(b)| over the union of both supports.
double max_amplitude_difference(const QuantumState& a, const QuantumState& b);

/// Draws `trials` independent outcomes from |amplitude|^2. Deterministic for
/// a fixed seed and state.
std::map<Bits, std::uint64_t> sample(const QuantumState& state, RngSeed seed,
                                     std::uint64_t trials);

/// Worker threads used by dense amplitude loops. Results do not depend on this
/// value: parallel loops are element-wise and reductions stay sequential.
int num_threads();
void set_num_threads(int threads);

}  // namespace fermisim

#endif  // FERMISIM_STATE_HPP_
