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

// Connectivity graphs of physical qubits and the generators for the three
// layout families: IBM Eagle r3 heavy-hex, rectangular grids and connected
// Erdos-Renyi graphs.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghz/errors.hpp"
#include "ghz/rng.hpp"

namespace ghz {

using NodeId = std::uint32_t;

/// Undirected edge, always stored with first < second.
struct Edge {
  NodeId first = 0;
  NodeId second = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Exact non-negative rational number in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidParameter("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Simple undirected graph on nodes 0..node_count-1.
///
/// Construction rejects self-loops, duplicate edges and out-of-range
/// endpoints. Connectivity is not enforced here (protocols check it); all
/// generators in this header produce connected graphs.
class LayoutGraph {
 public:
  LayoutGraph() : LayoutGraph(1, {}) {}

  LayoutGraph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)), adjacency_(node_count) {
    if (node_count_ == 0) throw InvalidParameter("layout graph needs at least one node");
    for (Edge& e : edges_) {
      if (e.first == e.second) throw InvalidParameter("self-loop in layout graph");
      if (e.first > e.second) std::swap(e.first, e.second);
      if (e.second >= node_count_) throw InvalidParameter("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw InvalidParameter("duplicate edge in layout graph");
    }
    for (const Edge& e : edges_) {
      adjacency_[e.first].push_back(e.second);
      adjacency_[e.second].push_back(e.first);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors in ascending order.
  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
    return d;
  }

  /// BFS distances from `source`; unreachable nodes get SIZE_MAX.
  std::vector<std::size_t> distances_from(NodeId source) const {
    std::vector<std::size_t> dist(node_count_, SIZE_MAX);
    std::queue<NodeId> queue;
    dist.at(source) = 0;
    queue.push(source);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop();
      for (NodeId w : adjacency_[u]) {
        if (dist[w] == SIZE_MAX) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return dist;
  }

  bool is_connected() const {
    const auto dist = distances_from(0);
    return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == SIZE_MAX; });
  }

  friend bool operator==(const LayoutGraph& a, const LayoutGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// 2|E| / |V| as an exact fraction.
inline Rational average_degree(const LayoutGraph& g) {
  return Rational::make(2 * static_cast<std::int64_t>(g.edge_count()),
                        static_cast<std::int64_t>(g.node_count()));
}

// ---------------------------------------------------------------------------
// Edge-list text format: one "u v" pair per line, '#' starts a comment line.

inline LayoutGraph parse_edge_list(std::string_view text, std::size_t node_count = 0) {
  std::vector<Edge> edges;
  std::size_t max_node = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    NodeId u = 0;
    NodeId v = 0;
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(line.data(), end, u);
    const char* p = r1.ptr;
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    auto r2 = std::from_chars(p, end, v);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r2.ptr != end || p == r1.ptr) {
      throw InvalidParameter("malformed edge line: '" + std::string(line) + "'");
    }
    edges.push_back({u, v});
    max_node = std::max<std::size_t>(max_node, std::max(u, v));
  }
  if (node_count == 0) node_count = edges.empty() ? 1 : max_node + 1;
  return LayoutGraph(node_count, std::move(edges));
}

namespace detail {
inline constexpr std::string_view kEagleR3EdgeList =
#include "ghz/eagle_r3_edges.inc"
    ;
}  // namespace detail

/// IBM Eagle r3 heavy-hex coupling map: 127 qubits, 144 couplers.
inline LayoutGraph eagle_127() {
  static const LayoutGraph graph = parse_edge_list(detail::kEagleR3EdgeList, 127);
  return graph;
}

/// rows x cols lattice; node (r, c) has index r * cols + c.
inline LayoutGraph rect_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidParameter("grid dimensions must be positive");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return LayoutGraph(rows * cols, std::move(edges));
}

/// Connected G(n, p): a uniformly random recursive tree (node i > 0 attaches
/// to a uniform node j < i) as backbone, then every other pair is joined
/// independently with probability p, pairs visited in lexicographic order.
inline LayoutGraph connected_erdos_renyi(std::size_t n, double p, RngSeed seed) {
  if (n == 0) throw InvalidParameter("Erdos-Renyi graph needs at least one node");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<NodeId> parent(n, 0);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    parent[i] = static_cast<NodeId>(rng.uniform_index(i));
    edges.push_back({parent[i], static_cast<NodeId>(i)});
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (parent[v] == u) continue;
      if (rng.bernoulli(p)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return LayoutGraph(n, std::move(edges));
}

/// A sampled subgraph relabeled to 0..k-1. original_index[i] is the node of
/// the source graph that became node i; it is ascending.
struct SampledSubgraph {
  LayoutGraph graph;
  std::vector<NodeId> original_index;
};

/// Induced subgraph on `nodes` (any order, no duplicates), relabeled in
/// ascending order of original index.
inline SampledSubgraph induced_subgraph(const LayoutGraph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  std::vector<NodeId> relabel(g.node_count(), UINT32_MAX);
  for (std::size_t i = 0; i < nodes.size(); ++i) relabel.at(nodes[i]) = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (relabel[e.first] != UINT32_MAX && relabel[e.second] != UINT32_MAX) {
      edges.push_back({relabel[e.first], relabel[e.second]});
    }
  }
  return {LayoutGraph(nodes.size(), std::move(edges)), std::move(nodes)};
}

/// Random accretion: start at a uniform node, then repeatedly add a uniform
/// member of the current frontier (nodes adjacent to, but outside, the set).
inline SampledSubgraph random_connected_subgraph(const LayoutGraph& g, std::size_t k,
                                                 RngSeed seed) {
  if (k < 1 || k > g.node_count()) {
    throw InvalidParameter("subgraph size " + std::to_string(k) + " outside [1, " +
                           std::to_string(g.node_count()) + "]");
  }
  Rng rng(seed);
  std::vector<char> in_set(g.node_count(), 0);
  std::vector<char> in_frontier(g.node_count(), 0);
  std::vector<NodeId> chosen;
  std::vector<NodeId> frontier;
  auto add = [&](NodeId v) {
    in_set[v] = 1;
    chosen.push_back(v);
    for (NodeId w : g.neighbors(v)) {
      if (!in_set[w] && !in_frontier[w]) {
        in_frontier[w] = 1;
        frontier.push_back(w);
      }
    }
  };
  add(static_cast<NodeId>(rng.uniform_index(g.node_count())));
  while (chosen.size() < k) {
    if (frontier.empty()) throw InvalidInput("source graph is disconnected");
    const std::size_t pick = rng.uniform_index(frontier.size());
    const NodeId v = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    in_frontier[v] = 0;
    add(v);
  }
  return induced_subgraph(g, std::move(chosen));
}

// ---------------------------------------------------------------------------
// JSON: {"n": int, "edges": [[u, v], ...]}

inline nlohmann::json to_json(const LayoutGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
  return {{"n", g.node_count()}, {"edges", std::move(edges)}};
}

inline LayoutGraph layout_from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidParameter("edge must be a [u, v] pair");
      edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
    }
    return LayoutGraph(j.at("n").get<std::size_t>(), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParameter(std::string("invalid layout JSON: ") + ex.what());
  }
}

}  // namespace ghz
