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

#include "fermisim/state.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "fermisim/errors.hpp"

namespace fermisim {

namespace {

std::atomic<bool> g_validation_mode{false};
std::atomic<int> g_num_threads{1};

constexpr double kNormTolerance = 1e-10;
constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

// Runs fn(begin, end) over [0, count) in contiguous chunks. Each index is
// touched by exactly one worker, so results match the sequential loop.
template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
  const int threads = g_num_threads.load();
  if (threads <= 1 || count < kParallelThreshold) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::jthread> workers;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = chunk * t;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

Amplitude lookup(const std::map<Bits, Amplitude>& m, Bits b) {
  auto it = m.find(b);
  return it == m.end() ? Amplitude{} : it->second;
}

void put(std::map<Bits, Amplitude>& m, Bits b, Amplitude a) {
  if (a == Amplitude{}) {
    m.erase(b);
  } else {
    m[b] = a;
  }
}

}  // namespace

bool validation_mode() { return g_validation_mode.load(); }
void set_validation_mode(bool enabled) { g_validation_mode.store(enabled); }

const char* version() { return FERMISIM_VERSION_STRING; }

int num_threads() { return g_num_threads.load(); }
void set_num_threads(int threads) { g_num_threads.store(std::max(1, threads)); }

// ---------------------------------------------------------------------------
// BasisString

BasisString::BasisString(Bits value, int width) : value_(value), width_(width) {
  if (width < 0 || width > kMaxQubits) {
    throw InvalidInput("basis string width " + std::to_string(width) +
                       " outside 0.." + std::to_string(kMaxQubits));
  }
  if ((value & ~low_mask(width)) != 0) {
    throw InvalidInput("basis value has bits set beyond width " +
                       std::to_string(width));
  }
}

BasisString BasisString::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw InvalidInput("basis string longer than 64 qubits");
  }
  Bits value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InvalidInput("basis string may only contain 0 and 1");
    }
    value = (value << 1) | static_cast<Bits>(c == '1');
  }
  return BasisString(value, static_cast<int>(text.size()));
}

std::string BasisString::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int q = 0; q < width_; ++q) {
    if (bit(q)) out[static_cast<std::size_t>(width_ - 1 - q)] = '1';
  }
  return out;
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> registers) {
  std::sort(registers.begin(), registers.end(),
            [](const Register& a, const Register& b) { return a.offset < b.offset; });
  int next = 0;
  std::set<std::string> names;
  for (const Register& r : registers) {
    if (r.width < 0) throw InvalidInput("register '" + r.name + "' has negative width");
    if (r.offset != next) {
      throw InvalidInput("registers must be disjoint and cover all qubits; register '" +
                         r.name + "' starts at " + std::to_string(r.offset) +
                         ", expected " + std::to_string(next));
    }
    if (!names.insert(r.name).second) {
      throw InvalidInput("duplicate register name '" + r.name + "'");
    }
    next += r.width;
  }
  if (next > kMaxQubits) throw InvalidInput("layout exceeds 64 qubits");
  registers_ = std::move(registers);
  num_qubits_ = next;
}

RegisterLayout RegisterLayout::flat(int num_qubits, std::string name) {
  RegisterLayout layout;
  layout.append(std::move(name), num_qubits);
  return layout;
}

RegisterLayout& RegisterLayout::append(std::string name, int width) {
  if (width < 0) throw InvalidInput("register '" + name + "' has negative width");
  if (contains(name)) throw InvalidInput("duplicate register name '" + name + "'");
  if (num_qubits_ + width > kMaxQubits) throw InvalidInput("layout exceeds 64 qubits");
  registers_.push_back(Register{std::move(name), num_qubits_, width});
  num_qubits_ += width;
  return *this;
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

const Register& RegisterLayout::at(std::string_view name) const {
  for (const Register& r : registers_) {
    if (r.name == name) return r;
  }
  throw InvalidInput("unknown register '" + std::string(name) + "'");
}

std::string_view to_string(Backend backend) {
  return backend == Backend::kDense ? "dense" : "sparse";
}

Backend parse_backend(std::string_view text) {
  if (text == "dense") return Backend::kDense;
  if (text == "sparse") return Backend::kSparse;
  throw InvalidInput("unknown backend '" + std::string(text) + "' (expected dense or sparse)");
}

// ---------------------------------------------------------------------------
// gates

namespace gates {

Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

Matrix2 hadamard() {
  const double s = std::numbers::sqrt2 / 2.0;
  return {s, s, s, -s};
}

Matrix2 exp_sigma_x(double theta) {
  const Amplitude c{std::cos(theta), 0.0};
  const Amplitude s{0.0, -std::sin(theta)};
  return {c, s, s, c};
}

Matrix2 real_rotation(double c0, double c1) { return {c0, -c1, c1, c0}; }

Matrix2 adjoint(const Matrix2& u) {
  return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

bool is_unitary(const Matrix2& u, double tol) {
  // Columns orthonormal.
  const double n0 = std::norm(u[0]) + std::norm(u[2]);
  const double n1 = std::norm(u[1]) + std::norm(u[3]);
  const Amplitude off = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  return std::abs(n0 - 1.0) <= tol && std::abs(n1 - 1.0) <= tol && std::abs(off) <= tol;
}

}  // namespace gates

TwoLevelPairing TwoLevelPairing::from_pairs(std::vector<Pair> pairs) {
  auto index = std::make_shared<std::unordered_map<Bits, Pair>>();
  for (const Pair& p : pairs) {
    if (p.first == p.second) {
      throw InvalidInput("two-level pair joins a basis string with itself");
    }
    if (!index->emplace(p.first, p).second || !index->emplace(p.second, p).second) {
      throw InvalidInput("basis string appears in more than one two-level pair");
    }
  }
  return TwoLevelPairing([index](Bits b) -> std::optional<Pair> {
    auto it = index->find(b);
    if (it == index->end()) return std::nullopt;
    return it->second;
  });
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(RegisterLayout layout, Backend backend)
    : layout_(std::move(layout)), backend_(backend) {
  if (backend_ == Backend::kDense) {
    if (layout_.num_qubits() > kMaxDenseQubits) {
      throw InvalidInput("dense backend limited to " + std::to_string(kMaxDenseQubits) +
                         " qubits; layout has " + std::to_string(layout_.num_qubits()));
    }
    dense_.assign(std::size_t{1} << layout_.num_qubits(), Amplitude{});
  }
}

QuantumState QuantumState::basis(RegisterLayout layout, const BasisString& bits,
                                 Backend backend) {
  if (bits.width() != layout.num_qubits()) {
    throw InvalidInput("basis string width " + std::to_string(bits.width()) +
                       " does not match layout width " +
                       std::to_string(layout.num_qubits()));
  }
  QuantumState state(std::move(layout), backend);
  state.store(bits.value(), Amplitude{1.0, 0.0});
  return state;
}

QuantumState QuantumState::from_amplitudes(RegisterLayout layout,
                                           std::span<const BasisAmplitude> amplitudes,
                                           Backend backend) {
  QuantumState state(std::move(layout), backend);
  const Bits valid = low_mask(state.num_qubits());
  std::map<Bits, Amplitude> merged;
  for (const BasisAmplitude& e : amplitudes) {
    if ((e.basis & ~valid) != 0) {
      throw InvalidInput("basis string exceeds layout width");
    }
    merged[e.basis] += e.amplitude;
  }
  for (const auto& [b, a] : merged) state.store(b, a);
  const double n = state.norm();
  if (std::abs(n * n - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "amplitude map is not normalized (sum |a|^2 = " << n * n << ")";
    throw InvalidInput(msg.str());
  }
  return state;
}

QuantumState QuantumState::from_trusted_entries(RegisterLayout layout,
                                                std::vector<BasisAmplitude> entries,
                                                Backend backend) {
  QuantumState state(std::move(layout), backend);
  for (const BasisAmplitude& e : entries) state.store(e.basis, e.amplitude);
  return state;
}

void QuantumState::store(Bits b, Amplitude a) {
  if (backend_ == Backend::kDense) {
    dense_[b] = a;
  } else {
    put(sparse_, b, a);
  }
}

Amplitude QuantumState::amplitude(Bits basis) const {
  if (backend_ == Backend::kDense) {
    return basis < dense_.size() ? dense_[basis] : Amplitude{};
  }
  return lookup(sparse_, basis);
}

Amplitude QuantumState::amplitude(const BasisString& basis) const {
  if (basis.width() != num_qubits()) {
    throw InvalidInput("basis string width does not match state width");
  }
  return amplitude(basis.value());
}

std::vector<BasisAmplitude> QuantumState::entries() const {
  std::vector<BasisAmplitude> out;
  for_each_entry([&](Bits b, Amplitude a) { out.push_back({b, a}); });
  return out;
}

std::size_t QuantumState::support_size() const {
  std::size_t count = 0;
  for_each_entry([&](Bits, Amplitude) { ++count; });
  return count;
}

double QuantumState::norm() const {
  double total = 0.0;
  for_each_entry([&](Bits, Amplitude a) { total += std::norm(a); });
  return std::sqrt(total);
}

QuantumState QuantumState::with_backend(Backend backend) const {
  QuantumState out(layout_, backend);
  for_each_entry([&](Bits b, Amplitude a) { out.store(b, a); });
  return out;
}

void QuantumState::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits()) {
    throw InvalidInput("qubit index " + std::to_string(qubit) + " outside 0.." +
                       std::to_string(num_qubits() - 1));
  }
}

void QuantumState::check_normalized(const char* op) const {
  if (!validation_mode()) return;
  const double n = norm();
  if (std::abs(n - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << op << " left the state with norm " << n;
    throw InvariantViolation(msg.str());
  }
}

void QuantumState::apply_unitary(int qubit, const Matrix2& u) {
  apply_controlled_unitary({}, qubit, u);
}

void QuantumState::apply_controlled_unitary(std::span<const Control> controls, int target,
                                            const Matrix2& u) {
  check_qubit(target);
  if (!gates::is_unitary(u)) throw InvalidInput("2x2 matrix is not unitary");
  Bits control_mask = 0;
  Bits control_value = 0;
  for (const Control& c : controls) {
    check_qubit(c.qubit);
    if (c.qubit == target) throw InvalidInput("control qubit overlaps target qubit");
    const Bits bit = Bits{1} << c.qubit;
    if ((control_mask & bit) != 0) throw InvalidInput("duplicate control qubit");
    control_mask |= bit;
    if (c.value) control_value |= bit;
  }
  const Bits tbit = Bits{1} << target;

  if (backend_ == Backend::kDense) {
    const std::size_t half = dense_.size() / 2;
    parallel_chunks(half, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        // Insert a zero at the target position.
        const Bits low = k & (tbit - 1);
        const Bits b0 = ((Bits{k} - low) << 1) | low;
        if ((b0 & control_mask) != control_value) continue;
        const Bits b1 = b0 | tbit;
        const Amplitude a0 = dense_[b0];
        const Amplitude a1 = dense_[b1];
        dense_[b0] = u[0] * a0 + u[1] * a1;
        dense_[b1] = u[2] * a0 + u[3] * a1;
      }
    });
  } else {
    std::set<Bits> bases;
    for (const auto& [b, a] : sparse_) {
      if ((b & control_mask) == control_value) bases.insert(b & ~tbit);
    }
    for (Bits b0 : bases) {
      const Bits b1 = b0 | tbit;
      const Amplitude a0 = lookup(sparse_, b0);
      const Amplitude a1 = lookup(sparse_, b1);
      put(sparse_, b0, u[0] * a0 + u[1] * a1);
      put(sparse_, b1, u[2] * a0 + u[3] * a1);
    }
  }
  check_normalized("controlled unitary");
}

void QuantumState::apply_phase_if(const BasisPredicate& predicate, double theta) {
  const Amplitude phase{std::cos(theta), std::sin(theta)};
  if (backend_ == Backend::kDense) {
    for (Bits b = 0; b < dense_.size(); ++b) {
      if (dense_[b] != Amplitude{} && predicate(b)) dense_[b] *= phase;
    }
  } else {
    for (auto& [b, a] : sparse_) {
      if (predicate(b)) a *= phase;
    }
  }
}

void QuantumState::apply_sign_if(const BasisPredicate& predicate) {
  if (backend_ == Backend::kDense) {
    for (Bits b = 0; b < dense_.size(); ++b) {
      if (dense_[b] != Amplitude{} && predicate(b)) dense_[b] = -dense_[b];
    }
  } else {
    for (auto& [b, a] : sparse_) {
      if (predicate(b)) a = -a;
    }
  }
}

void QuantumState::apply_permutation(const BasisMap& f) {
  const int q = num_qubits();
  if (validation_mode() && q <= 20) {
    const Bits size = Bits{1} << q;
    std::vector<bool> hit(size, false);
    for (Bits b = 0; b < size; ++b) {
      const Bits image = f(b);
      if (image >= size || hit[image]) {
        throw InvalidInput("basis map is not a bijection on the full basis");
      }
      hit[image] = true;
    }
  }
  rewrite_support(f);
}

void QuantumState::rewrite_support(const BasisMap& f) {
  const Bits valid = low_mask(num_qubits());
  if (backend_ == Backend::kDense) {
    std::vector<Amplitude> out(dense_.size(), Amplitude{});
    std::vector<bool> written(dense_.size(), false);
    for (Bits b = 0; b < dense_.size(); ++b) {
      if (dense_[b] == Amplitude{}) continue;
      const Bits image = f(b);
      if ((image & ~valid) != 0 || written[image]) {
        throw InvariantViolation("basis rewrite is not injective on the support");
      }
      written[image] = true;
      out[image] = dense_[b];
    }
    dense_ = std::move(out);
  } else {
    std::map<Bits, Amplitude> out;
    for (const auto& [b, a] : sparse_) {
      const Bits image = f(b);
      if ((image & ~valid) != 0 || !out.emplace(image, a).second) {
        throw InvariantViolation("basis rewrite is not injective on the support");
      }
    }
    sparse_ = std::move(out);
  }
}

void QuantumState::apply_two_level_mix(const TwoLevelPairing& pairing, const Matrix2& u) {
  if (!gates::is_unitary(u)) throw InvalidInput("2x2 matrix is not unitary");
  const Bits valid = low_mask(num_qubits());

  auto checked_pair = [&](Bits b) -> std::optional<TwoLevelPairing::Pair> {
    auto p = pairing.pair_of(b);
    if (!p) return p;
    if (p->first != b && p->second != b) {
      throw InvalidInput("pairing returned a pair that does not contain the queried string");
    }
    if (p->first == p->second || ((p->first | p->second) & ~valid) != 0) {
      throw InvalidInput("invalid two-level pair");
    }
    const Bits other = p->first == b ? p->second : p->first;
    auto q = pairing.pair_of(other);
    if (!q || *q != *p) throw InvalidInput("two-level pairs overlap");
    return p;
  };

  auto mix = [&](Bits b0, Bits b1) {
    const Amplitude a0 = amplitude(b0);
    const Amplitude a1 = amplitude(b1);
    store(b0, u[0] * a0 + u[1] * a1);
    store(b1, u[2] * a0 + u[3] * a1);
  };

  if (backend_ == Backend::kDense) {
    for (Bits b = 0; b < dense_.size(); ++b) {
      auto p = checked_pair(b);
      if (p && p->first == b) mix(p->first, p->second);
    }
  } else {
    std::set<TwoLevelPairing::Pair> touched;
    for (const auto& [b, a] : sparse_) {
      if (auto p = checked_pair(b)) touched.insert(*p);
    }
    for (const auto& [b0, b1] : touched) mix(b0, b1);
  }
  check_normalized("two-level mix");
}

void QuantumState::apply_qft(std::string_view register_name, bool inverse) {
  const Register& reg = layout_.at(register_name);
  const std::size_t n = std::size_t{1} << reg.width;
  const double sign = inverse ? -1.0 : 1.0;
  std::vector<Amplitude> twiddle(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Bits mask = reg.mask();

  auto transform = [&](const std::vector<Amplitude>& in) {
    std::vector<Amplitude> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      Amplitude acc{};
      for (std::size_t x = 0; x < n; ++x) {
        if (in[x] != Amplitude{}) acc += twiddle[(k * x) % n] * in[x];
      }
      out[k] = acc * scale;
    }
    return out;
  };

  // Group amplitudes by the setting of all other registers.
  std::map<Bits, std::vector<Amplitude>> groups;
  for_each_entry([&](Bits b, Amplitude a) {
    auto [it, inserted] = groups.try_emplace(b & ~mask);
    if (inserted) it->second.assign(n, Amplitude{});
    it->second[reg.read(b)] = a;
  });
  for (auto& [rest, values] : groups) {
    const std::vector<Amplitude> out = transform(values);
    for (std::size_t k = 0; k < n; ++k) store(reg.write(rest, k), out[k]);
  }
  check_normalized("qft");
}

// ---------------------------------------------------------------------------
// free functions

Amplitude inner_product(const QuantumState& a, const QuantumState& b) {
  if (!(a.layout() == b.layout())) {
    throw InvalidInput("inner product of states with different layouts");
  }
  Amplitude total{};
  a.for_each_entry([&](Bits basis, Amplitude x) { total += std::conj(x) * b.amplitude(basis); });
  return total;
}

double l2_distance(const QuantumState& a, const QuantumState& b) {
  if (!(a.layout() == b.layout())) {
    throw InvalidInput("distance between states with different layouts");
  }
  double total = 0.0;
  a.for_each_entry([&](Bits basis, Amplitude x) { total += std::norm(x - b.amplitude(basis)); });
  b.for_each_entry([&](Bits basis, Amplitude y) {
    if (a.amplitude(basis) == Amplitude{}) total += std::norm(y);
  });
  return std::sqrt(total);
}

double max_amplitude_difference(const QuantumState& a, const QuantumState& b) {
  if (!(a.layout() == b.layout())) {
    throw InvalidInput("comparison of states with different layouts");
  }
  double worst = 0.0;
  a.for_each_entry([&](Bits basis, Amplitude x) {
    worst = std::max(worst, std::abs(x - b.amplitude(basis)));
  });
  b.for_each_entry([&](Bits basis, Amplitude y) {
    worst = std::max(worst, std::abs(y - a.amplitude(basis)));
  });
  return worst;
}

std::map<Bits, std::uint64_t> sample(const QuantumState& state, RngSeed seed,
                                     std::uint64_t trials) {
  if (trials == 0) throw InvalidInput("sample requires at least one trial");
  std::vector<Bits> outcomes;
  std::vector<double> cumulative;
  double total = 0.0;
  state.for_each_entry([&](Bits b, Amplitude a) {
    total += std::norm(a);
    outcomes.push_back(b);
    cumulative.push_back(total);
  });
  if (outcomes.empty()) throw InvalidInput("cannot sample the zero vector");

  std::mt19937_64 rng(seed.value);
  std::map<Bits, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < trials; ++i) {
    // 53-bit uniform double in [0, 1); std::uniform_real_distribution is not
    // reproducible across standard libraries.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    ++counts[outcomes[static_cast<std::size_t>(it - cumulative.begin())]];
  }
  return counts;
}

}  // namespace fermisim
