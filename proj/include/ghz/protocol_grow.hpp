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

// Unitary GHZ synthesis ("growing"): prepare a star GHZ state on the
// highest-degree node, then extend it breadth-first with one CX per new
// qubit, always controlled from a qubit that is already in the state.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ghz/circuit.hpp"
#include "ghz/errors.hpp"
#include "ghz/layouts.hpp"
#include "ghz/protocol_merge.hpp"
#include "ghz/rng.hpp"

namespace ghz {

/// Highest-degree node, lowest index on ties.
inline NodeId highest_degree_node(const LayoutGraph& g) {
  NodeId best = 0;
  for (NodeId v = 1; v < g.node_count(); ++v) {
    if (g.degree(v) > g.degree(best)) best = v;
  }
  return best;
}

/// Within each BFS layer the new nodes are visited in ascending order; each
/// takes as parent the already-included neighbour whose qubit becomes free
/// earliest in the ASAP schedule (lowest index on ties). Nodes added in the
/// current layer are not parents until the next one.
///
/// `seed` is accepted for interface uniformity and not consumed.
inline Circuit synthesize_growing(const LayoutGraph& g, RngSeed seed = {}) {
  (void)seed;
  if (!g.is_connected()) throw InvalidInput("growing synthesis needs a connected layout");
  const std::size_t n = g.node_count();
  Circuit circuit(n);
  std::vector<char> included(n, 0);
  std::vector<std::size_t> busy_until(n, 0);  // last ASAP layer per qubit

  const NodeId start = highest_degree_node(g);
  const Star initial{start, g.neighbors(start)};
  for (auto& operation : build_star_ghz(initial)) circuit.append(std::move(operation));
  busy_until[start] = 1 + initial.degree();
  included[start] = 1;
  for (std::size_t i = 0; i < initial.leaves.size(); ++i) {
    included[initial.leaves[i]] = 1;
    busy_until[initial.leaves[i]] = 2 + i;
  }
  std::size_t count = initial.size();

  while (count < n) {
    std::vector<NodeId> frontier;
    for (NodeId v = 0; v < n; ++v) {
      if (included[v]) continue;
      const auto& nbrs = g.neighbors(v);
      if (std::any_of(nbrs.begin(), nbrs.end(), [&](NodeId w) { return included[w] != 0; })) {
        frontier.push_back(v);
      }
    }
    if (frontier.empty()) throw InternalInvariant("growing stalled on a connected layout");
    for (NodeId v : frontier) {
      NodeId parent = 0;
      bool have_parent = false;
      for (NodeId w : g.neighbors(v)) {
        if (!included[w]) continue;
        if (!have_parent || busy_until[w] < busy_until[parent]) {
          parent = w;
          have_parent = true;
        }
      }
      circuit.cx(parent, v);
      const std::size_t layer = std::max(busy_until[parent], busy_until[v]) + 1;
      busy_until[parent] = busy_until[v] = layer;
    }
    for (NodeId v : frontier) included[v] = 1;
    count += frontier.size();
  }
  circuit.validate();
  return circuit;
}

}  // namespace ghz
