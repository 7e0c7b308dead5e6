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

// Figures of merit: Hellinger fidelity between readout distributions, exact
// GHZ verification of a stabilizer tableau, and sample statistics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ghz/errors.hpp"
#include "ghz/stabilizer.hpp"

namespace ghz {

/// Probability distribution over readout bitstrings.
class Distribution {
 public:
  Distribution() = default;

  /// Throws InvalidParameter unless probabilities are >= 0 and sum to 1
  /// within 1e-9.
  explicit Distribution(std::map<std::string, double> probabilities)
      : probabilities_(std::move(probabilities)) {
    double total = 0.0;
    for (const auto& [key, p] : probabilities_) {
      if (!(p >= 0.0)) throw InvalidParameter("negative probability for '" + key + "'");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidParameter("probabilities do not sum to 1");
  }

  const std::map<std::string, double>& probabilities() const { return probabilities_; }

  double operator[](const std::string& key) const {
    const auto it = probabilities_.find(key);
    return it == probabilities_.end() ? 0.0 : it->second;
  }

  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count_if(probabilities_.begin(), probabilities_.end(),
                                                  [](const auto& kv) { return kv.second > 0.0; }));
  }

 private:
  std::map<std::string, double> probabilities_;
};

/// (sum_i sqrt(p_i q_i))^2 over the union of supports.
inline double hellinger_fidelity(const Distribution& p, const Distribution& q) {
  if (p.probabilities().empty() || q.probabilities().empty()) {
    throw InvalidParameter("hellinger fidelity of an empty distribution");
  }
  double overlap = 0.0;
  for (const auto& [key, pk] : p.probabilities()) overlap += std::sqrt(pk * q[key]);
  return std::min(1.0, overlap * overlap);
}

inline Distribution ghz_ideal_distribution(std::size_t n) {
  if (n < 1) throw InvalidParameter("GHZ size must be at least 1");
  return Distribution({{std::string(n, '0'), 0.5}, {std::string(n, '1'), 0.5}});
}

inline Distribution counts_to_distribution(const std::map<std::string, std::uint64_t>& counts,
                                           std::uint64_t shots) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : counts) total += count;
  if (shots == 0 || total != shots) {
    throw InvalidParameter("counts sum to " + std::to_string(total) + ", expected " +
                           std::to_string(shots));
  }
  std::map<std::string, double> probabilities;
  for (const auto& [key, count] : counts) {
    probabilities[key] = static_cast<double>(count) / static_cast<double>(shots);
  }
  return Distribution(std::move(probabilities));
}

/// X^{(x)n}, Z0Z1, Z1Z2, ..., Z_{n-2}Z_{n-1}.
inline std::vector<PauliString> ghz_stabilizer_generators(std::size_t n) {
  std::vector<PauliString> gens;
  PauliString all_x(n);
  for (std::size_t q = 0; q < n; ++q) all_x.set(q, true, false);
  gens.push_back(all_x);
  for (std::size_t q = 0; q + 1 < n; ++q) {
    PauliString zz(n);
    zz.set(q, false, true);
    zz.set(q + 1, false, true);
    gens.push_back(zz);
  }
  return gens;
}

/// True iff the state of `t` is the n-qubit GHZ state. Membership is checked
/// in both directions: every GHZ generator lies in the tableau's group, and
/// every tableau generator lies in the GHZ group.
inline bool is_ghz(const Tableau& t, std::size_t n) {
  if (t.qubit_count() != n || n == 0) return false;
  for (const PauliString& g : ghz_stabilizer_generators(n)) {
    if (!t.contains(g)) return false;
  }
  Tableau reference(n);
  reference.h(0);
  for (std::size_t q = 1; q < n; ++q) reference.cx(0, q);
  for (const PauliString& s : t.stabilizers()) {
    if (!reference.contains(s)) return false;
  }
  return true;
}

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double max = 0.0;
  std::size_t count = 0;
};

inline SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidParameter("summary of an empty sample");
  SummaryStats s;
  s.count = values.size();
  s.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.count);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(s.count));
  return s;
}

}  // namespace ghz
