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

// Measurement-based GHZ synthesis ("merging"): partition the layout into
// stars, prepare a small GHZ state on each star, then fuse neighbouring GHZ
// states in parallel rounds. A fusion is CX across a bridge edge, a Z-basis
// measurement of the absorbed-side bridge qubit, X corrections on the rest of
// the absorbed state conditioned on the outcome, and finally reset plus CX to
// bring the measured qubit back into the merged state.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghz/circuit.hpp"
#include "ghz/errors.hpp"
#include "ghz/layouts.hpp"
#include "ghz/rng.hpp"

namespace ghz {

// ---------------------------------------------------------------------------
// Star selection strategies

/// Repeatedly take the residual node of largest residual degree together
/// with all of its residual neighbours.
struct HighestDegree {
  friend bool operator==(const HighestDegree&, const HighestDegree&) = default;
};

/// Target star degree = round(f * average degree of the layout).
struct ScalingFactor {
  double f = 1.0;
  friend bool operator==(const ScalingFactor&, const ScalingFactor&) = default;
};

/// Target star size s, i.e. target star degree s - 1.
struct AbsoluteSize {
  std::size_t s = 1;
  friend bool operator==(const AbsoluteSize&, const AbsoluteSize&) = default;
};

using StarSelectionStrategy = std::variant<HighestDegree, ScalingFactor, AbsoluteSize>;

inline void validate(const StarSelectionStrategy& strategy) {
  if (const auto* sf = std::get_if<ScalingFactor>(&strategy)) {
    if (!(sf->f > 0.0) || !std::isfinite(sf->f)) {
      throw InvalidParameter("scaling factor must be a positive finite number");
    }
  } else if (const auto* as = std::get_if<AbsoluteSize>(&strategy)) {
    if (as->s < 1) throw InvalidParameter("absolute star size must be at least 1");
  }
}

/// Short stable label, e.g. "highest_degree", "scaling_factor_1.3",
/// "absolute_size_4".
inline std::string strategy_label(const StarSelectionStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const HighestDegree&) { return std::string("highest_degree"); },
                        [](const ScalingFactor& s) {
                          std::ostringstream out;
                          out << "scaling_factor_" << s.f;
                          return out.str();
                        },
                        [](const AbsoluteSize& s) {
                          return "absolute_size_" + std::to_string(s.s);
                        },
                    },
                    strategy);
}

inline nlohmann::json to_json(const StarSelectionStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const HighestDegree&) {
                          return nlohmann::json{{"strategy", "highest_degree"}};
                        },
                        [](const ScalingFactor& s) {
                          return nlohmann::json{{"strategy", "scaling_factor"}, {"f", s.f}};
                        },
                        [](const AbsoluteSize& s) {
                          return nlohmann::json{{"strategy", "absolute_size"}, {"s", s.s}};
                        },
                    },
                    strategy);
}

inline StarSelectionStrategy strategy_from_json(const nlohmann::json& j) {
  StarSelectionStrategy strategy;
  try {
    const auto name = j.at("strategy").get<std::string>();
    if (name == "highest_degree") {
      strategy = HighestDegree{};
    } else if (name == "scaling_factor") {
      strategy = ScalingFactor{j.at("f").get<double>()};
    } else if (name == "absolute_size") {
      const auto s = j.at("s").get<std::int64_t>();
      if (s < 1) throw InvalidParameter("absolute star size must be at least 1");
      strategy = AbsoluteSize{static_cast<std::size_t>(s)};
    } else {
      throw InvalidParameter("unknown star selection strategy '" + name + "'");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParameter(std::string("invalid strategy JSON: ") + ex.what());
  }
  validate(strategy);
  return strategy;
}

/// Target star degree for a strategy, or nullopt for HighestDegree.
/// Rounding is half away from zero.
inline std::optional<std::size_t> target_star_degree(const StarSelectionStrategy& strategy,
                                                     const Rational& layout_average_degree) {
  validate(strategy);
  return std::visit(Overloaded{
                        [](const HighestDegree&) -> std::optional<std::size_t> {
                          return std::nullopt;
                        },
                        [&](const ScalingFactor& s) -> std::optional<std::size_t> {
                          const double target = s.f * static_cast<double>(layout_average_degree.num) /
                                                static_cast<double>(layout_average_degree.den);
                          return static_cast<std::size_t>(std::round(target));
                        },
                        [](const AbsoluteSize& s) -> std::optional<std::size_t> {
                          return s.s - 1;
                        },
                    },
                    strategy);
}

// ---------------------------------------------------------------------------
// Stars

struct Star {
  NodeId center = 0;
  std::vector<NodeId> leaves;  // ascending

  std::size_t degree() const { return leaves.size(); }
  std::size_t size() const { return leaves.size() + 1; }

  friend bool operator==(const Star&, const Star&) = default;
};

/// Throws InternalInvariant unless `stars` partition the nodes of `g` and
/// every leaf is adjacent to its centre.
inline void check_star_partition(const LayoutGraph& g, const std::vector<Star>& stars) {
  std::vector<char> seen(g.node_count(), 0);
  auto claim = [&](NodeId v) {
    if (v >= g.node_count() || seen[v]) throw InternalInvariant("stars do not partition the layout");
    seen[v] = 1;
  };
  for (const Star& star : stars) {
    claim(star.center);
    for (NodeId leaf : star.leaves) {
      claim(leaf);
      if (!g.has_edge(star.center, leaf)) throw InternalInvariant("star leaf not adjacent to centre");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InternalInvariant("stars do not cover the layout");
  }
}

/// Iterative star selection on the residual graph. Ties (equal degree, equal
/// distance to the target) go to the lowest node index; when a star takes
/// fewer leaves than its centre has residual neighbours, the lowest-index
/// neighbours are taken.
///
/// `reference_average_degree` is the average degree the scaling factor is
/// relative to; it defaults to the average degree of `g`.
inline std::vector<Star> select_stars(const LayoutGraph& g, const StarSelectionStrategy& strategy,
                                      std::optional<Rational> reference_average_degree = {}) {
  const auto target =
      target_star_degree(strategy, reference_average_degree.value_or(average_degree(g)));
  const std::size_t n = g.node_count();
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> residual(n);
  for (NodeId v = 0; v < n; ++v) residual[v] = g.degree(v);

  auto remove = [&](NodeId v) {
    alive[v] = 0;
    for (NodeId w : g.neighbors(v)) --residual[w];
  };
  auto score = [&](NodeId v) -> std::size_t {
    // Smaller is better.
    if (!target) return n - residual[v];
    return residual[v] > *target ? residual[v] - *target : *target - residual[v];
  };

  std::vector<Star> stars;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (alive[v] && (!best || score(v) < score(*best))) best = v;
    }
    Star star{*best, {}};
    const std::size_t take = target ? std::min(residual[*best], *target) : residual[*best];
    for (NodeId w : g.neighbors(*best)) {
      if (star.leaves.size() == take) break;
      if (alive[w]) star.leaves.push_back(w);
    }
    remove(star.center);
    for (NodeId leaf : star.leaves) remove(leaf);
    remaining -= star.size();
    stars.push_back(std::move(star));
  }
  check_star_partition(g, stars);
  return stars;
}

/// H on the centre, then CX from the centre to each leaf in ascending order.
inline std::vector<Operation> build_star_ghz(const Star& star) {
  std::vector<Operation> ops;
  ops.reserve(star.size());
  ops.emplace_back(op::H{star.center});
  for (NodeId leaf : star.leaves) ops.emplace_back(op::CX{star.center, leaf});
  return ops;
}

// ---------------------------------------------------------------------------
// Merge planning

/// One fusion. `bridge_keeper` lies in `keeper` and `bridge_absorbed` in
/// `absorbed`, and they are adjacent in the layout. Node lists are ascending.
struct Merge {
  std::vector<NodeId> keeper;
  std::vector<NodeId> absorbed;
  NodeId bridge_keeper = 0;
  NodeId bridge_absorbed = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Rounds of pairwise-disjoint merges; after the last round a single
/// component spans the layout.
struct MergePlan {
  std::vector<std::vector<Merge>> rounds;

  std::size_t merge_count() const {
    std::size_t total = 0;
    for (const auto& round : rounds) total += round.size();
    return total;
  }
};

/// Repeated greedy maximal matching on the component adjacency graph.
///
/// Components are keyed by their smallest node. Candidate pairs are visited
/// in ascending (availability, smaller key, larger key) order, where the
/// availability of a pair is the ASAP layer after which every qubit of both
/// components is idle, given star preparation followed by the earlier rounds.
/// Each matched pair is merged this round and contracted before the next.
inline MergePlan plan_merges(const LayoutGraph& g, const std::vector<Star>& stars) {
  check_star_partition(g, stars);
  const std::size_t n = g.node_count();

  std::vector<std::vector<NodeId>> members;  // by component id
  std::vector<std::size_t> component(n);
  std::vector<std::size_t> busy(n, 0);  // last ASAP layer touching each qubit
  for (const Star& star : stars) {
    busy[star.center] = star.size();
    for (std::size_t i = 0; i < star.leaves.size(); ++i) busy[star.leaves[i]] = i + 2;
    std::vector<NodeId> nodes = star.leaves;
    nodes.push_back(star.center);
    std::sort(nodes.begin(), nodes.end());
    for (NodeId v : nodes) component[v] = members.size();
    members.push_back(std::move(nodes));
  }
  std::size_t live = members.size();

  MergePlan plan;
  while (live > 1) {
    std::vector<std::size_t> ready(members.size(), 0);
    for (NodeId v = 0; v < n; ++v) ready[component[v]] = std::max(ready[component[v]], busy[v]);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const Edge& e : g.edges()) {
      std::size_t a = component[e.first];
      std::size_t b = component[e.second];
      if (a == b) continue;
      if (members[a].front() > members[b].front()) std::swap(a, b);
      pairs.emplace_back(a, b);
    }
    if (pairs.empty()) throw InternalInvariant("component graph is disconnected");
    auto sort_key = [&](const std::pair<std::size_t, std::size_t>& p) {
      return std::tuple(std::max(ready[p.first], ready[p.second]), members[p.first].front(),
                        members[p.second].front());
    };
    std::sort(pairs.begin(), pairs.end(),
              [&](const auto& x, const auto& y) { return sort_key(x) < sort_key(y); });
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<char> matched(members.size(), 0);
    std::vector<Merge> round;
    for (const auto& [a, b] : pairs) {
      if (matched[a] || matched[b]) continue;
      matched[a] = matched[b] = 1;
      // Smaller component is absorbed; on equal size the one holding the
      // lower node index (a) is absorbed.
      const bool a_absorbed = members[a].size() <= members[b].size();
      const std::size_t keeper = a_absorbed ? b : a;
      const std::size_t absorbed = a_absorbed ? a : b;

      Merge merge{members[keeper], members[absorbed], 0, 0};
      bool found = false;
      for (NodeId u : merge.keeper) {
        for (NodeId v : g.neighbors(u)) {
          if (component[v] == absorbed) {
            merge.bridge_keeper = u;
            merge.bridge_absorbed = v;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) throw InternalInvariant("matched components share no edge");
      round.push_back(std::move(merge));
    }

    for (const Merge& merge : round) {
      const NodeId u = merge.bridge_keeper;
      const NodeId v = merge.bridge_absorbed;
      busy[u] = busy[v] = std::max(busy[u], busy[v]) + 1;  // CX
      const std::size_t measured = ++busy[v];
      std::size_t corrected = measured;
      for (NodeId w : merge.absorbed) {
        if (w != v) corrected = std::max(corrected, busy[w]);
      }
      for (NodeId w : merge.absorbed) {
        if (w != v) busy[w] = corrected + 1;  // CondX
      }
      ++busy[v];                                            // Reset
      busy[u] = busy[v] = std::max(busy[u], busy[v]) + 1;  // CX

      const std::size_t keeper = component[merge.bridge_keeper];
      const std::size_t absorbed = component[merge.bridge_absorbed];
      for (NodeId v : members[absorbed]) component[v] = keeper;
      std::vector<NodeId> joined;
      std::merge(members[keeper].begin(), members[keeper].end(), members[absorbed].begin(),
                 members[absorbed].end(), std::back_inserter(joined));
      members[keeper] = std::move(joined);
      members[absorbed].clear();
      --live;
    }
    plan.rounds.push_back(std::move(round));
  }
  return plan;
}

/// Appends one fusion of `merge.absorbed` into `merge.keeper` to `circuit`.
inline void append_merge(Circuit& circuit, const Merge& merge) {
  const NodeId u = merge.bridge_keeper;
  const NodeId v = merge.bridge_absorbed;
  circuit.cx(u, v);
  const Cbit outcome = circuit.measure(v);
  std::vector<Qubit> corrections;
  for (NodeId w : merge.absorbed) {
    if (w != v) corrections.push_back(w);
  }
  if (!corrections.empty()) circuit.cond_x(std::move(corrections), outcome);
  circuit.reset(v);
  circuit.cx(u, v);
}

struct MergingSynthesis {
  Circuit circuit;
  std::vector<Star> stars;
  MergePlan plan;
};

/// Full merging synthesis with the intermediate star partition and plan.
/// The procedure is deterministic; `seed` is accepted for interface
/// uniformity with the other synthesizers and is not consumed.
inline MergingSynthesis synthesize_merging_detailed(
    const LayoutGraph& g, const StarSelectionStrategy& strategy, RngSeed seed = {},
    std::optional<Rational> reference_average_degree = {}) {
  (void)seed;
  validate(strategy);
  if (!g.is_connected()) throw InvalidInput("merging synthesis needs a connected layout");
  MergingSynthesis result;
  result.stars = select_stars(g, strategy, reference_average_degree);
  result.plan = plan_merges(g, result.stars);
  result.circuit = Circuit(g.node_count());
  for (const Star& star : result.stars) {
    for (auto& operation : build_star_ghz(star)) result.circuit.append(std::move(operation));
  }
  for (const auto& round : result.plan.rounds) {
    for (const Merge& merge : round) append_merge(result.circuit, merge);
  }
  result.circuit.validate();
  return result;
}

inline Circuit synthesize_merging(const LayoutGraph& g, const StarSelectionStrategy& strategy,
                                  RngSeed seed = {},
                                  std::optional<Rational> reference_average_degree = {}) {
  return synthesize_merging_detailed(g, strategy, seed, reference_average_degree).circuit;
}

}  // namespace ghz
