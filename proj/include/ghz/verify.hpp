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

// Self-checks on small instances: exact GHZ preparation and count identities
// for both synthesizers, the two-star merge against the dense oracle, and
// tableau-vs-dense agreement on random Clifford circuits with mid-circuit
// measurement. Backs the `verify` CLI subcommand.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ghz/circuit.hpp"
#include "ghz/layouts.hpp"
#include "ghz/metrics.hpp"
#include "ghz/oracle.hpp"
#include "ghz/protocol_grow.hpp"
#include "ghz/protocol_merge.hpp"
#include "ghz/rng.hpp"
#include "ghz/stabilizer.hpp"

namespace ghz {

/// Random circuit over {H, X, CX, MeasureZ, Reset, CondX} that satisfies the
/// circuit invariants (measured qubits are reset before reuse, CondX reads
/// an already-written bit).
inline Circuit random_clifford_circuit(std::size_t n, std::size_t op_count, Rng& rng) {
  Circuit c(n);
  std::vector<char> measured(n, 0);
  std::vector<Cbit> written;
  auto live_qubits = [&] {
    std::vector<Qubit> out;
    for (Qubit q = 0; q < n; ++q) {
      if (!measured[q]) out.push_back(q);
    }
    return out;
  };
  while (c.ops().size() < op_count) {
    const auto live = live_qubits();
    const std::uint64_t kind = rng.uniform_index(10);
    if (kind <= 2 && !live.empty()) {
      c.h(live[rng.uniform_index(live.size())]);
    } else if (kind == 3 && !live.empty()) {
      c.x(live[rng.uniform_index(live.size())]);
    } else if (kind <= 6 && live.size() >= 2) {
      const std::size_t a = rng.uniform_index(live.size());
      std::size_t b = rng.uniform_index(live.size() - 1);
      if (b >= a) ++b;
      c.cx(live[a], live[b]);
    } else if (kind == 7 && !live.empty()) {
      const Qubit q = live[rng.uniform_index(live.size())];
      written.push_back(c.measure(q));
      measured[q] = 1;
    } else if (kind == 8) {
      const Qubit q = static_cast<Qubit>(rng.uniform_index(n));
      c.reset(q);
      measured[q] = 0;
    } else if (kind == 9 && !written.empty() && !live.empty()) {
      std::vector<Qubit> targets;
      for (Qubit q : live) {
        if (rng.coin()) targets.push_back(q);
      }
      if (targets.empty()) targets.push_back(live.front());
      c.cond_x(std::move(targets), written[rng.uniform_index(written.size())]);
    }
  }
  c.validate();
  return c;
}

/// Two star GHZ states, keeper on n+1 qubits and absorbed on m+1 qubits,
/// fused through their centres. `labels` maps logical positions (keeper
/// centre, keeper leaves, absorbed centre, absorbed leaves) to physical
/// qubits and must be a permutation of 0..n+m+1. With `readd` false the
/// circuit stops after the conditional correction, leaving the absorbed
/// centre measured.
struct TwoStarMerge {
  Circuit circuit;
  Qubit measured_qubit = 0;
};

inline TwoStarMerge two_star_merge_circuit(std::size_t n, std::size_t m,
                                           const std::vector<Qubit>& labels, bool readd) {
  const std::size_t total = n + m + 2;
  if (labels.size() != total) throw InvalidParameter("label permutation has wrong size");
  Star keeper{labels[0], {}};
  for (std::size_t i = 1; i <= n; ++i) keeper.leaves.push_back(labels[i]);
  Star absorbed{labels[n + 1], {}};
  for (std::size_t i = n + 2; i < total; ++i) absorbed.leaves.push_back(labels[i]);
  std::sort(keeper.leaves.begin(), keeper.leaves.end());
  std::sort(absorbed.leaves.begin(), absorbed.leaves.end());

  Merge merge{{}, {}, keeper.center, absorbed.center};
  merge.keeper = keeper.leaves;
  merge.keeper.push_back(keeper.center);
  merge.absorbed = absorbed.leaves;
  merge.absorbed.push_back(absorbed.center);
  std::sort(merge.keeper.begin(), merge.keeper.end());
  std::sort(merge.absorbed.begin(), merge.absorbed.end());

  TwoStarMerge out{Circuit(total), absorbed.center};
  for (auto& o : build_star_ghz(keeper)) out.circuit.append(std::move(o));
  for (auto& o : build_star_ghz(absorbed)) out.circuit.append(std::move(o));
  if (readd) {
    append_merge(out.circuit, merge);
  } else {
    out.circuit.cx(merge.bridge_keeper, merge.bridge_absorbed);
    const Cbit b = out.circuit.measure(merge.bridge_absorbed);
    std::vector<Qubit> corrections;
    for (NodeId w : merge.absorbed) {
      if (w != merge.bridge_absorbed) corrections.push_back(w);
    }
    if (!corrections.empty()) out.circuit.cond_x(std::move(corrections), b);
  }
  out.circuit.validate();
  return out;
}

/// GHZ on every qubit except `excluded`, which is fixed to |value>.
inline StateVector ghz_with_fixed_qubit(std::size_t total, Qubit excluded, bool value) {
  std::vector<StateVector::Amplitude> amps(std::size_t{1} << total, 0.0);
  const std::size_t all = (std::size_t{1} << total) - 1;
  const std::size_t bit = std::size_t{1} << (total - 1 - excluded);
  const std::size_t zeros = value ? bit : 0;
  const std::size_t ones = value ? all : (all & ~bit);
  amps[zeros] = amps[ones] = 1.0 / std::sqrt(2.0);
  return StateVector::from_amplitudes(total, std::move(amps));
}

/// True iff every stabilizer generator of `t` has expectation +1 on `psi`.
inline bool dense_state_stabilized(const Tableau& t, const StateVector& psi, double tol = 1e-9) {
  for (const PauliString& s : t.stabilizers()) {
    if (std::abs(psi.expectation(s) - 1.0) > tol) return false;
  }
  return true;
}

struct VerifyCheck {
  explicit VerifyCheck(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void record(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

/// Runs every self-check with `seeds` random instances per configuration.
inline std::vector<VerifyCheck> run_verification(std::size_t seeds = 5, RngSeed master = {}) {
  std::vector<VerifyCheck> checks;

  {
    VerifyCheck ghz_check("synthesized circuits prepare GHZ with expected counts");
    const LayoutGraph eagle = eagle_127();
    const LayoutGraph grid = rect_grid(6, 6);
    const Rational eagle_avg = average_degree(eagle);
    const Rational grid_avg = average_degree(grid);
    const std::vector<StarSelectionStrategy> strategies = {
        HighestDegree{}, ScalingFactor{0.7}, ScalingFactor{1.0}, ScalingFactor{1.3},
        AbsoluteSize{2}, AbsoluteSize{4}};
    for (std::size_t n : {1, 2, 5, 12}) {
      for (std::uint64_t s = 0; s < seeds; ++s) {
        const RngSeed seed = derive_seed(master, {n, s});
        struct Case {
          std::string label;
          LayoutGraph graph;
          Rational reference;
        };
        std::vector<Case> cases = {
            {"eagle", random_connected_subgraph(eagle, n, seed).graph, eagle_avg},
            {"grid", random_connected_subgraph(grid, n, seed).graph, grid_avg}};
        for (double p : {0.1, 0.5, 1.0}) {
          auto g = connected_erdos_renyi(n, p, seed);
          const Rational avg = average_degree(g);
          cases.push_back({"er", std::move(g), avg});
        }
        for (const Case& item : cases) {
          const std::string where = item.label + " N=" + std::to_string(n) + " seed " +
                                    std::to_string(s);
          const Circuit grown = synthesize_growing(item.graph, seed);
          ghz_check.record(is_ghz(run(grown, seed).tableau, n) && count_2q(grown) == n - 1 &&
                               count_measurements(grown) == 0 && count_resets(grown) == 0,
                           "growing " + where);
          for (const auto& strategy : strategies) {
            const auto merged = synthesize_merging_detailed(item.graph, strategy, seed, item.reference);
            const std::size_t meas = count_measurements(merged.circuit);
            ghz_check.record(is_ghz(run(merged.circuit, seed).tableau, n) &&
                                 meas + 1 == merged.stars.size() &&
                                 count_2q(merged.circuit) == n - 1 + meas,
                             "merging/" + strategy_label(strategy) + " " + where);
          }
        }
      }
    }
    checks.push_back(std::move(ghz_check));
  }

  {
    VerifyCheck merge_check("two-star merge matches GHZ on the dense oracle, both branches");
    for (std::size_t n = 0; n <= 4; ++n) {
      for (std::size_t m = 0; m <= 4; ++m) {
        for (std::uint64_t s = 0; s < seeds; ++s) {
          Rng rng(derive_seed(master, {0x6d657267ULL, n, m, s}));
          std::vector<Qubit> labels(n + m + 2);
          std::iota(labels.begin(), labels.end(), Qubit{0});
          for (std::size_t i = labels.size(); i > 1; --i) {
            std::swap(labels[i - 1], labels[rng.uniform_index(i)]);
          }
          for (std::uint8_t branch : {0, 1}) {
            const auto merge = two_star_merge_circuit(n, m, labels, false);
            const auto dense = run_dense(merge.circuit, {}, std::vector<std::uint8_t>{branch});
            const double f = state_fidelity(
                dense.state, ghz_with_fixed_qubit(n + m + 2, merge.measured_qubit, branch != 0));
            const auto readd = two_star_merge_circuit(n, m, labels, true);
            const auto dense_readd = run_dense(readd.circuit, {}, std::vector<std::uint8_t>{branch});
            const double f_readd = state_fidelity(dense_readd.state, StateVector::ghz(n + m + 2));
            merge_check.record(std::abs(f - 1.0) < 1e-10 && std::abs(f_readd - 1.0) < 1e-10,
                               "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                   " branch " + std::to_string(branch));
          }
        }
      }
    }
    checks.push_back(std::move(merge_check));
  }

  {
    VerifyCheck agree("tableau stabilizers stabilize the dense state on random circuits");
    Rng rng(derive_seed(master, {0x636c6966ULL}));
    for (std::size_t i = 0; i < 20 * seeds; ++i) {
      const std::size_t n = 1 + rng.uniform_index(8);
      const Circuit c = random_clifford_circuit(n, 1 + rng.uniform_index(40), rng);
      std::vector<std::uint8_t> coins(c.ops().size());
      for (auto& b : coins) b = rng.coin() ? 1 : 0;
      SimOptions options;
      options.pinned_coins = coins;
      const SimOutcome sim = run(c, {}, {}, options);
      const DenseOutcome dense = run_dense(c, {}, sim.measurement_events);
      agree.record(dense.cbits == sim.cbits && dense_state_stabilized(sim.tableau, dense.state),
                   "random circuit " + std::to_string(i));
    }
    checks.push_back(std::move(agree));
  }
  return checks;
}

}  // namespace ghz
