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

// Helpers shared by the unit tests. Everything here is written against the
// public API only and avoids the code paths it is used to check.

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ghz/ghz.hpp"

namespace ghz::testing {

inline LayoutGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return LayoutGraph(n, edges);
}

inline LayoutGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return LayoutGraph(leaves + 1, edges);
}

inline LayoutGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return LayoutGraph(n, edges);
}

/// Breadth-first reachability written independently of LayoutGraph helpers.
inline bool reachable_from_zero(const LayoutGraph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const Edge& e : g.edges()) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack = {0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.node_count();
}

/// Qubit -> whether it was measured and not reset afterwards.
inline std::map<Qubit, bool> unreset_measured_qubits(const Circuit& c) {
  std::map<Qubit, bool> state;
  for (const Operation& o : c.ops()) {
    if (const auto* m = std::get_if<op::MeasureZ>(&o)) state[m->q] = true;
    if (const auto* r = std::get_if<op::Reset>(&o)) state[r->q] = false;
  }
  return state;
}

/// Exact distribution of the terminal all-qubit readout of `c`, obtained by
/// branching a statevector over every mid-circuit measurement event.
inline std::map<std::string, double> exact_readout_distribution(const Circuit& c) {
  std::map<std::string, double> dist;
  const std::size_t n = c.qubit_count();

  struct Branch {
    StateVector psi;
    std::vector<std::uint8_t> cbits;
    double weight;
  };

  auto recurse = [&](auto& self, Branch b, std::size_t next) -> void {
    for (std::size_t i = next; i < c.ops().size(); ++i) {
      const Operation& operation = c.ops()[i];
      if (const auto* h = std::get_if<op::H>(&operation)) {
        b.psi.h(h->q);
      } else if (const auto* x = std::get_if<op::X>(&operation)) {
        b.psi.x(x->q);
      } else if (const auto* cx = std::get_if<op::CX>(&operation)) {
        b.psi.cx(cx->control, cx->target);
      } else if (const auto* cond = std::get_if<op::CondX>(&operation)) {
        if (b.cbits[cond->cbit]) {
          for (Qubit q : cond->targets) b.psi.x(q);
        }
      } else {
        const bool is_reset = std::holds_alternative<op::Reset>(operation);
        const Qubit q = is_reset ? std::get<op::Reset>(operation).q
                                 : std::get<op::MeasureZ>(operation).q;
        const double p1 = b.psi.probability_one(q);
        for (int outcome = 0; outcome < 2; ++outcome) {
          const double p = outcome ? p1 : 1.0 - p1;
          if (p < 1e-12) continue;
          Branch child = b;
          child.psi.project(q, outcome != 0);
          child.weight *= p;
          if (is_reset) {
            if (outcome) child.psi.x(q);
          } else {
            child.cbits[std::get<op::MeasureZ>(operation).cbit] = static_cast<std::uint8_t>(outcome);
          }
          self(self, std::move(child), i + 1);
        }
        return;
      }
    }
    const auto& amps = b.psi.amplitudes();
    for (std::size_t index = 0; index < amps.size(); ++index) {
      const double p = std::norm(amps[index]) * b.weight;
      if (p < 1e-15) continue;
      std::string key(n, '0');
      for (std::size_t q = 0; q < n; ++q) {
        if ((index >> (n - 1 - q)) & 1U) key[q] = '1';
      }
      dist[key] += p;
    }
  };
  recurse(recurse, Branch{StateVector(n), std::vector<std::uint8_t>(c.cbit_count(), 0), 1.0}, 0);
  return dist;
}

inline double total_variation(const std::map<std::string, double>& p,
                              const std::map<std::string, double>& q) {
  std::map<std::string, double> diff = p;
  for (const auto& [key, value] : q) diff[key] -= value;
  double sum = 0.0;
  for (const auto& [key, value] : diff) sum += std::abs(value);
  return sum / 2.0;
}

}  // namespace ghz::testing
