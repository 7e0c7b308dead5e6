// Copyright 2026 The ghz-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stabilizer-tableau simulation (Aaronson-Gottesman form) of the circuit IR,
// including mid-circuit measurement, reset, classical feedforward and a
// parametric Pauli noise model.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghz/circuit.hpp"
#include "ghz/errors.hpp"
#include "ghz/rng.hpp"

namespace ghz {

namespace detail {

inline constexpr std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

/// Exponent of i (mod 4) picked up by the product (x1,z1) * (x2,z2), excluding
/// the sign bits of the operands.
inline int product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                         std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
  int sum = 0;
  for (std::size_t w = 0; w < x1.size(); ++w) {
    const std::uint64_t a = x1[w], b = z1[w], c = x2[w], d = z2[w];
    const std::uint64_t plus = (a & b & d & ~c) | (a & ~b & d & c) | (~a & b & c & ~d);
    const std::uint64_t minus = (a & b & c & ~d) | (a & ~b & d & ~c) | (~a & b & c & d);
    sum += std::popcount(plus) - std::popcount(minus);
  }
  return ((sum % 4) + 4) % 4;
}

inline bool anticommute(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                        std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
  int parity = 0;
  for (std::size_t w = 0; w < x1.size(); ++w) {
    parity ^= std::popcount((x1[w] & z2[w]) ^ (z1[w] & x2[w])) & 1;
  }
  return parity != 0;
}

}  // namespace detail

/// Hermitian Pauli operator with a +/- sign. Qubit q has X part bit x(q) and
/// Z part bit z(q); x=z=1 denotes Y.
class PauliString {
 public:
  explicit PauliString(std::size_t n = 0)
      : n_(n), x_(detail::words_for(n), 0), z_(detail::words_for(n), 0) {}

  /// Parses strings like "+XXZ_", "-ZZI" (I or _ for identity).
  static PauliString parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    PauliString p(text.size());
    p.negative_ = negative;
    for (std::size_t q = 0; q < text.size(); ++q) {
      switch (text[q]) {
        case 'X': p.set(q, true, false); break;
        case 'Y': p.set(q, true, true); break;
        case 'Z': p.set(q, false, true); break;
        case 'I':
        case '_': break;
        default: throw InvalidParameter("bad Pauli character");
      }
    }
    return p;
  }

  std::size_t size() const { return n_; }
  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  bool negative() const { return negative_; }
  void set_negative(bool v) { negative_ = v; }

  void set(std::size_t q, bool xbit, bool zbit) {
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    x_[q >> 6] = xbit ? (x_[q >> 6] | m) : (x_[q >> 6] & ~m);
    z_[q >> 6] = zbit ? (z_[q >> 6] | m) : (z_[q >> 6] & ~m);
  }

  std::span<const std::uint64_t> xs() const { return x_; }
  std::span<const std::uint64_t> zs() const { return z_; }

  /// this <- other * this. Operands must commute.
  void left_multiply(const PauliString& other) {
    const int phase = detail::product_phase(other.x_, other.z_, x_, z_);
    negative_ = negative_ ^ other.negative_ ^ (phase == 2);
    for (std::size_t w = 0; w < x_.size(); ++w) {
      x_[w] ^= other.x_[w];
      z_[w] ^= other.z_[w];
    }
  }

  bool commutes_with(const PauliString& other) const {
    return !detail::anticommute(x_, z_, other.x_, other.z_);
  }

  std::string str() const {
    std::string s(1, negative_ ? '-' : '+');
    for (std::size_t q = 0; q < n_; ++q) s += "IXZY"[x(q) + 2 * z(q)];
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  bool negative_ = false;
};

/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers, row 2n scratch.
class Tableau {
 public:
  explicit Tableau(std::size_t n)
      : n_(n),
        words_(detail::words_for(n)),
        x_((2 * n + 1) * words_, 0),
        z_((2 * n + 1) * words_, 0),
        r_(2 * n + 1, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      set_bit(x_, i, i);
      set_bit(z_, n + i, i);
    }
  }

  std::size_t qubit_count() const { return n_; }

  void h(std::size_t a) {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      const bool xa = bit(x_, i, a), za = bit(z_, i, a);
      r_[i] ^= static_cast<std::uint8_t>(xa && za);
      assign_bit(x_, i, a, za);
      assign_bit(z_, i, a, xa);
    }
  }

  void x(std::size_t a) {
    for (std::size_t i = 0; i < 2 * n_; ++i) r_[i] ^= static_cast<std::uint8_t>(bit(z_, i, a));
  }

  void z(std::size_t a) {
    for (std::size_t i = 0; i < 2 * n_; ++i) r_[i] ^= static_cast<std::uint8_t>(bit(x_, i, a));
  }

  void y(std::size_t a) {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      r_[i] ^= static_cast<std::uint8_t>(bit(x_, i, a) != bit(z_, i, a));
    }
  }

  void cx(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      const bool xa = bit(x_, i, a), za = bit(z_, i, a);
      const bool xb = bit(x_, i, b), zb = bit(z_, i, b);
      r_[i] ^= static_cast<std::uint8_t>(xa && zb && (xb == za));
      assign_bit(x_, i, b, xb != xa);
      assign_bit(z_, i, a, za != zb);
    }
  }

  /// 1 = X, 2 = Y, 3 = Z, 0 = identity.
  void pauli(std::size_t a, int which) {
    switch (which) {
      case 1: x(a); break;
      case 2: y(a); break;
      case 3: z(a); break;
      default: break;
    }
  }

  /// True when a Z measurement of qubit a has a fixed outcome.
  bool is_deterministic(std::size_t a) const {
    for (std::size_t p = n_; p < 2 * n_; ++p) {
      if (bit(x_, p, a)) return false;
    }
    return true;
  }

  /// Z measurement of qubit a. `random_outcome` is used only when the
  /// outcome is not determined by the state.
  bool measure(std::size_t a, bool random_outcome) {
    std::size_t p = n_;
    while (p < 2 * n_ && !bit(x_, p, a)) ++p;
    if (p < 2 * n_) {
      for (std::size_t i = 0; i < 2 * n_; ++i) {
        if (i != p && bit(x_, i, a)) rowsum(i, p);
      }
      copy_row(p - n_, p);
      clear_row(p);
      set_bit(z_, p, a);
      r_[p] = random_outcome ? 1 : 0;
      return random_outcome;
    }
    const std::size_t scratch = 2 * n_;
    clear_row(scratch);
    for (std::size_t i = 0; i < n_; ++i) {
      if (bit(x_, i, a)) rowsum(scratch, i + n_);
    }
    return r_[scratch] != 0;
  }

  PauliString stabilizer(std::size_t i) const { return row(n_ + i); }
  PauliString destabilizer(std::size_t i) const { return row(i); }

  std::vector<PauliString> stabilizers() const {
    std::vector<PauliString> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(stabilizer(i));
    return out;
  }

  /// True iff `p`, sign included, is an element of the stabilizer group.
  bool contains(const PauliString& p) const {
    if (p.size() != n_) throw InvalidParameter("Pauli size does not match tableau");
    PauliString product(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const PauliString s = stabilizer(i);
      if (!s.commutes_with(p)) return false;
      if (!destabilizer(i).commutes_with(p)) product.left_multiply(s);
    }
    return product == p;
  }

  /// Symplectic relations: stabilizer i anticommutes with destabilizer i and
  /// commutes with every other row.
  bool check_invariants() const {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      for (std::size_t j = i + 1; j < 2 * n_; ++j) {
        const bool expected = (j == i + n_);
        if (detail::anticommute(xrow(i), zrow(i), xrow(j), zrow(j)) != expected) return false;
      }
    }
    return true;
  }

 private:
  std::span<const std::uint64_t> xrow(std::size_t i) const { return {x_.data() + i * words_, words_}; }
  std::span<const std::uint64_t> zrow(std::size_t i) const { return {z_.data() + i * words_, words_}; }

  bool bit(const std::vector<std::uint64_t>& m, std::size_t row, std::size_t q) const {
    return (m[row * words_ + (q >> 6)] >> (q & 63)) & 1;
  }
  void set_bit(std::vector<std::uint64_t>& m, std::size_t row, std::size_t q) {
    m[row * words_ + (q >> 6)] |= std::uint64_t{1} << (q & 63);
  }
  void assign_bit(std::vector<std::uint64_t>& m, std::size_t row, std::size_t q, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (q & 63);
    auto& word = m[row * words_ + (q >> 6)];
    word = v ? (word | mask) : (word & ~mask);
  }

  /// row h <- row i * row h.
  void rowsum(std::size_t h, std::size_t i) {
    const int phase = detail::product_phase(xrow(i), zrow(i), xrow(h), zrow(h));
    const int total = (2 * r_[h] + 2 * r_[i] + phase) % 4;
    r_[h] = total == 2 ? 1 : 0;
    for (std::size_t w = 0; w < words_; ++w) {
      x_[h * words_ + w] ^= x_[i * words_ + w];
      z_[h * words_ + w] ^= z_[i * words_ + w];
    }
  }

  void copy_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) {
      x_[dst * words_ + w] = x_[src * words_ + w];
      z_[dst * words_ + w] = z_[src * words_ + w];
    }
    r_[dst] = r_[src];
  }

  void clear_row(std::size_t i) {
    for (std::size_t w = 0; w < words_; ++w) x_[i * words_ + w] = z_[i * words_ + w] = 0;
    r_[i] = 0;
  }

  PauliString row(std::size_t i) const {
    PauliString p(n_);
    for (std::size_t q = 0; q < n_; ++q) p.set(q, bit(x_, i, q), bit(z_, i, q));
    p.set_negative(r_[i] != 0);
    return p;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::vector<std::uint8_t> r_;
};

// ---------------------------------------------------------------------------
// Noise

/// Pauli noise. p1: single-qubit depolarizing after every H and X (including
/// X gates fired by a conditional). p2: two-qubit depolarizing after every CX
/// (uniform over the 15 non-identity Paulis). pm: the recorded bit of a
/// measurement is flipped; the quantum state still collapses to the true
/// outcome. pr: a reset leaves the qubit in |1>.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double pm = 0.0;
  double pr = 0.0;

  void validate() const {
    for (double p : {p1, p2, pm, pr}) {
      if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("noise probabilities must lie in [0, 1]");
    }
  }
};

struct SimOptions {
  std::size_t max_qubits = 512;
  /// Per measurement event (each MeasureZ and each Reset, in circuit order):
  /// the outcome to use when it is random. Ignored for deterministic
  /// outcomes; events past the end use the seeded coin.
  std::optional<std::vector<std::uint8_t>> pinned_coins;
#ifdef NDEBUG
  bool check_invariants = false;
#else
  bool check_invariants = true;
#endif
};

struct SimOutcome {
  Tableau tableau{0};
  /// Recorded classical bits (after readout noise).
  std::vector<std::uint8_t> cbits;
  /// Physical outcome of every measurement event (MeasureZ and Reset).
  std::vector<std::uint8_t> measurement_events;
};

inline SimOutcome run(const Circuit& c, RngSeed seed, const std::optional<NoiseModel>& noise = {},
                      const SimOptions& options = {}) {
  c.validate();
  if (c.qubit_count() > options.max_qubits) {
    throw CapacityError("circuit has " + std::to_string(c.qubit_count()) +
                        " qubits; simulator maximum is " + std::to_string(options.max_qubits));
  }
  if (noise) noise->validate();
  Rng rng(seed);
  SimOutcome out;
  out.tableau = Tableau(c.qubit_count());
  out.cbits.assign(c.cbit_count(), 0);
  Tableau& t = out.tableau;
  const bool check = options.check_invariants && c.qubit_count() <= 32;

  auto depolarize1 = [&](Qubit q) {
    if (noise && rng.bernoulli(noise->p1)) t.pauli(q, 1 + static_cast<int>(rng.uniform_index(3)));
  };
  auto depolarize2 = [&](Qubit a, Qubit b) {
    if (noise && rng.bernoulli(noise->p2)) {
      const auto k = 1 + static_cast<int>(rng.uniform_index(15));
      t.pauli(a, k / 4);
      t.pauli(b, k % 4);
    }
  };
  auto measure_event = [&](Qubit q) {
    const std::size_t event = out.measurement_events.size();
    bool random_outcome;
    if (options.pinned_coins && event < options.pinned_coins->size()) {
      random_outcome = (*options.pinned_coins)[event] != 0;
    } else if (t.is_deterministic(q)) {
      random_outcome = false;
    } else {
      random_outcome = rng.coin();
    }
    const bool result = t.measure(q, random_outcome);
    out.measurement_events.push_back(result ? 1 : 0);
    return result;
  };

  for (const Operation& operation : c.ops()) {
    std::visit(Overloaded{
                   [&](const op::H& o) {
                     t.h(o.q);
                     depolarize1(o.q);
                   },
                   [&](const op::X& o) {
                     t.x(o.q);
                     depolarize1(o.q);
                   },
                   [&](const op::CX& o) {
                     t.cx(o.control, o.target);
                     depolarize2(o.control, o.target);
                   },
                   [&](const op::MeasureZ& o) {
                     bool recorded = measure_event(o.q);
                     if (noise && rng.bernoulli(noise->pm)) recorded = !recorded;
                     out.cbits[o.cbit] = recorded ? 1 : 0;
                   },
                   [&](const op::Reset& o) {
                     if (measure_event(o.q)) t.x(o.q);
                     if (noise && rng.bernoulli(noise->pr)) t.x(o.q);
                   },
                   [&](const op::CondX& o) {
                     if (!out.cbits[o.cbit]) return;
                     for (Qubit q : o.targets) {
                       t.x(q);
                       depolarize1(q);
                     }
                   },
               },
               operation);
    if (check && !t.check_invariants()) throw InternalInvariant("tableau lost symplectic form");
  }
  return out;
}

/// Copy of `c` with a Z measurement of every qubit appended; the readout of
/// qubit q lands in classical bit c.cbit_count() + q.
inline Circuit with_terminal_readout(const Circuit& c) {
  Circuit readout = c;
  for (Qubit q = 0; q < c.qubit_count(); ++q) readout.measure(q);
  return readout;
}

using Counts = std::map<std::string, std::uint64_t>;

/// Histogram of terminal all-qubit readouts over `shots` independent runs.
/// Bitstrings put qubit 0 leftmost. Shot s uses seed derive_seed(seed, {s}).
inline Counts sample_counts(const Circuit& c, std::uint64_t shots, RngSeed seed,
                            const std::optional<NoiseModel>& noise = {},
                            SimOptions options = {}) {
  if (shots < 1) throw InvalidParameter("shots must be at least 1");
  const Circuit readout = with_terminal_readout(c);
  options.check_invariants = false;
  Counts counts;
  std::string key(c.qubit_count(), '0');
  for (std::uint64_t s = 0; s < shots; ++s) {
    const SimOutcome outcome = run(readout, derive_seed(seed, {s}), noise, options);
    for (std::size_t q = 0; q < c.qubit_count(); ++q) {
      key[q] = outcome.cbits[c.cbit_count() + q] ? '1' : '0';
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace ghz
