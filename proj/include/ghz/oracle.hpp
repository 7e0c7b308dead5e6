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

// Dense statevector simulation for small circuits. Independent of the
// tableau simulator; used to cross-check it and the merge construction.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghz/circuit.hpp"
#include "ghz/errors.hpp"
#include "ghz/rng.hpp"
#include "ghz/stabilizer.hpp"

namespace ghz {

inline constexpr std::size_t kOracleMaxQubits = 14;

/// Amplitudes indexed with qubit 0 as the most significant bit, matching the
/// readout bitstring order.
class StateVector {
 public:
  using Amplitude = std::complex<double>;

  explicit StateVector(std::size_t n) : n_(n), amps_(std::size_t{1} << n, 0.0) {
    if (n > kOracleMaxQubits) {
      throw CapacityError("dense oracle supports at most " + std::to_string(kOracleMaxQubits) +
                          " qubits");
    }
    amps_[0] = 1.0;
  }

  static StateVector from_amplitudes(std::size_t n, std::vector<Amplitude> amps) {
    StateVector s(n);
    if (amps.size() != s.amps_.size()) throw InvalidParameter("amplitude count mismatch");
    s.amps_ = std::move(amps);
    return s;
  }

  /// (|0...0> + |1...1>) / sqrt(2).
  static StateVector ghz(std::size_t n) {
    StateVector s(n);
    s.amps_[0] = s.amps_.back() = 1.0 / std::sqrt(2.0);
    if (n == 0) s.amps_[0] = 1.0;
    return s;
  }

  std::size_t qubit_count() const { return n_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }

  double norm() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return std::sqrt(total);
  }

  void h(std::size_t q) {
    const std::size_t m = mask(q);
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & m) continue;
      const Amplitude a = amps_[i], b = amps_[i | m];
      amps_[i] = s * (a + b);
      amps_[i | m] = s * (a - b);
    }
  }

  void x(std::size_t q) {
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
    }
  }

  void cx(std::size_t control, std::size_t target) {
    const std::size_t mc = mask(control), mt = mask(target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
    }
  }

  /// Probability that a Z measurement of q yields 1.
  double probability_one(std::size_t q) const {
    const std::size_t m = mask(q);
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & m) p += std::norm(amps_[i]);
    }
    return p;
  }

  /// Projects q onto `outcome` and renormalizes.
  void project(std::size_t q, bool outcome) {
    const std::size_t m = mask(q);
    double kept = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (static_cast<bool>(i & m) != outcome) {
        amps_[i] = 0.0;
      } else {
        kept += std::norm(amps_[i]);
      }
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& a : amps_) a *= scale;
  }

  /// <psi| P |psi> for a Hermitian Pauli P (real up to rounding).
  double expectation(const PauliString& p) const {
    if (p.size() != n_) throw InvalidParameter("Pauli size does not match state");
    std::size_t xmask = 0, zmask = 0;
    int y_count = 0;
    for (std::size_t q = 0; q < n_; ++q) {
      if (p.x(q)) xmask |= mask(q);
      if (p.z(q)) zmask |= mask(q);
      if (p.x(q) && p.z(q)) ++y_count;
    }
    // P = (+/-) i^{#Y} X^x Z^z, so P|b> = (+/-) i^{#Y} (-1)^{b.z} |b ^ x>.
    static const Amplitude kIPow[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
    const Amplitude global = kIPow[y_count % 4] * (p.negative() ? -1.0 : 1.0);
    Amplitude total = 0.0;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      const double sign = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
      total += std::conj(amps_[b ^ xmask]) * sign * amps_[b];
    }
    return (global * total).real();
  }

 private:
  std::size_t mask(std::size_t q) const { return std::size_t{1} << (n_ - 1 - q); }

  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// |<a|b>|^2.
inline double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) throw InvalidParameter("state sizes differ");
  std::complex<double> overlap = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return std::norm(overlap);
}

struct DenseOutcome {
  StateVector state{0};
  std::vector<std::uint8_t> cbits;
  std::vector<std::uint8_t> measurement_events;
};

/// Runs `c` on a statevector. Measurement events (each MeasureZ and each
/// Reset, in circuit order) take their outcome from `forced_outcomes` when
/// the list covers them, otherwise from the Born rule with `seed`. Forcing
/// an outcome of probability < 1e-12 throws InvalidForcing.
inline DenseOutcome run_dense(const Circuit& c, RngSeed seed,
                              const std::optional<std::vector<std::uint8_t>>& forced_outcomes = {}) {
  c.validate();
  if (c.qubit_count() > kOracleMaxQubits) {
    throw CapacityError("dense oracle supports at most " + std::to_string(kOracleMaxQubits) +
                        " qubits");
  }
  Rng rng(seed);
  DenseOutcome out{StateVector(c.qubit_count()), std::vector<std::uint8_t>(c.cbit_count(), 0), {}};
  StateVector& psi = out.state;

  auto measure_event = [&](Qubit q) {
    const std::size_t event = out.measurement_events.size();
    const double p1 = psi.probability_one(q);
    bool outcome;
    if (forced_outcomes && event < forced_outcomes->size()) {
      outcome = (*forced_outcomes)[event] != 0;
      if ((outcome ? p1 : 1.0 - p1) < 1e-12) {
        throw InvalidForcing("forced outcome " + std::to_string(outcome) + " of event " +
                             std::to_string(event) + " has probability zero");
      }
    } else {
      outcome = rng.uniform01() < p1;
    }
    psi.project(q, outcome);
    out.measurement_events.push_back(outcome ? 1 : 0);
    return outcome;
  };

  for (const Operation& operation : c.ops()) {
    std::visit(Overloaded{
                   [&](const op::H& o) { psi.h(o.q); },
                   [&](const op::X& o) { psi.x(o.q); },
                   [&](const op::CX& o) { psi.cx(o.control, o.target); },
                   [&](const op::MeasureZ& o) { out.cbits[o.cbit] = measure_event(o.q) ? 1 : 0; },
                   [&](const op::Reset& o) {
                     if (measure_event(o.q)) psi.x(o.q);
                   },
                   [&](const op::CondX& o) {
                     if (out.cbits[o.cbit]) {
                       for (Qubit q : o.targets) psi.x(q);
                     }
                   },
               },
               operation);
  }
  return out;
}

}  // namespace ghz
