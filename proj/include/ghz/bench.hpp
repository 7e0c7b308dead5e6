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

// Benchmark sweeps: sample layouts, synthesize with each protocol, measure
// depth / two-qubit gates / measurements (and optionally sampled fidelity),
// and write plot-ready CSV.

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghz/circuit.hpp"
#include "ghz/errors.hpp"
#include "ghz/layouts.hpp"
#include "ghz/metrics.hpp"
#include "ghz/protocol_grow.hpp"
#include "ghz/protocol_merge.hpp"
#include "ghz/rng.hpp"
#include "ghz/stabilizer.hpp"

namespace ghz {

enum class LayoutFamily { kEagleSubgraph, kRectGridSubgraph, kErdosRenyi };

enum class Protocol { kGrowing, kMerging };

struct ProtocolSpec {
  Protocol protocol = Protocol::kGrowing;
  StarSelectionStrategy strategy = HighestDegree{};  // merging only

  std::string protocol_label() const {
    return protocol == Protocol::kGrowing ? "growing" : "merging";
  }
  std::string strategy_label() const {
    return protocol == Protocol::kGrowing ? "none" : ghz::strategy_label(strategy);
  }
};

/// What the scaling factor of a star selection is relative to: the average
/// degree of the full source layout (Eagle chip / full grid), or of the
/// sampled graph itself. Erdos-Renyi graphs are their own source.
enum class ScalingReference { kSourceLayout, kSample };

struct SweepConfig {
  LayoutFamily family = LayoutFamily::kEagleSubgraph;
  double p = 0.5;         // erdos_renyi
  std::size_t rows = 12;  // rect_grid_subgraph
  std::size_t cols = 9;
  std::vector<std::size_t> sizes;
  std::vector<ProtocolSpec> protocols;
  std::size_t samples = 100;
  std::uint64_t shots = 4096;
  bool fidelity = false;
  std::optional<NoiseModel> noise;
  /// Check every synthesized circuit with a noiseless tableau run.
  bool verify = true;
  ScalingReference scaling_reference = ScalingReference::kSourceLayout;
  RngSeed seed{};
  std::size_t threads = 0;  // 0: default_thread_count()

  std::string family_label() const {
    switch (family) {
      case LayoutFamily::kEagleSubgraph: return "eagle_subgraph";
      case LayoutFamily::kRectGridSubgraph:
        return "rect_grid_subgraph_" + std::to_string(rows) + "x" + std::to_string(cols);
      case LayoutFamily::kErdosRenyi: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "erdos_renyi_p%g", p);
        return buf;
      }
    }
    return "unknown";
  }
};

struct BenchmarkRecord {
  std::string family;
  std::size_t n = 0;
  std::string protocol;
  std::string strategy;
  std::size_t sample = 0;
  std::uint64_t seed = 0;  // layout seed; shared by every protocol on this sample
  std::size_t depth = 0;
  std::size_t n_2q = 0;
  std::size_t n_meas = 0;
  std::size_t n_stars = 0;  // merging only; not part of the CSV
  std::optional<double> mean_star_size;
  std::optional<double> scaling_factor;  // realized: mean star degree / average degree
  std::optional<double> fidelity;
};

/// Worker count: available parallelism, capped by GHZ_SYNTH_THREADS.
inline std::size_t default_thread_count() {
  std::size_t count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GHZ_SYNTH_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) count = std::min<std::size_t>(count, cap);
  }
  return count;
}

/// Runs work(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any item is rethrown after all workers stop.
template <class Work>
void parallel_for(std::size_t count, std::size_t threads, Work&& work) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

inline std::size_t source_node_count(const SweepConfig& cfg) {
  switch (cfg.family) {
    case LayoutFamily::kEagleSubgraph: return 127;
    case LayoutFamily::kRectGridSubgraph: return cfg.rows * cfg.cols;
    case LayoutFamily::kErdosRenyi: return SIZE_MAX;
  }
  return 0;
}

inline void validate_config(const SweepConfig& cfg) {
  if (cfg.sizes.empty()) throw InvalidConfig("sweep needs at least one size");
  if (cfg.protocols.empty()) throw InvalidConfig("sweep needs at least one protocol");
  if (cfg.samples < 1) throw InvalidConfig("samples must be at least 1");
  if (cfg.fidelity && cfg.shots < 1) throw InvalidConfig("shots must be at least 1");
  if (cfg.family == LayoutFamily::kRectGridSubgraph && (cfg.rows == 0 || cfg.cols == 0)) {
    throw InvalidConfig("grid dimensions must be positive");
  }
  if (cfg.family == LayoutFamily::kErdosRenyi && !(cfg.p >= 0.0 && cfg.p <= 1.0)) {
    throw InvalidConfig("edge probability must lie in [0, 1]");
  }
  if (cfg.noise) cfg.noise->validate();
  for (const auto& spec : cfg.protocols) {
    if (spec.protocol == Protocol::kMerging) validate(spec.strategy);
  }
  const std::size_t limit = source_node_count(cfg);
  for (std::size_t n : cfg.sizes) {
    if (n < 1) throw InvalidConfig("sizes must be at least 1");
    if (n > limit) {
      throw InvalidConfig("size " + std::to_string(n) + " exceeds the " +
                          std::to_string(limit) + "-node source layout");
    }
  }
}

}  // namespace detail

/// Every record of the sweep, ordered by (size in config order, protocol in
/// config order, sample). Deterministic under cfg.seed regardless of the
/// worker count.
inline std::vector<BenchmarkRecord> run_sweep(const SweepConfig& cfg) {
  detail::validate_config(cfg);
  const std::string family = cfg.family_label();
  const std::uint64_t family_key = hash_string(family);

  std::optional<LayoutGraph> source;
  if (cfg.family == LayoutFamily::kEagleSubgraph) source = eagle_127();
  if (cfg.family == LayoutFamily::kRectGridSubgraph) source = rect_grid(cfg.rows, cfg.cols);

  const std::size_t per_size = cfg.samples * cfg.protocols.size();
  std::vector<BenchmarkRecord> records(cfg.sizes.size() * per_size);

  auto item = [&](std::size_t index) {
    const std::size_t size_index = index / cfg.samples;
    const std::size_t sample = index % cfg.samples;
    const std::size_t n = cfg.sizes[size_index];
    const RngSeed layout_seed = derive_seed(cfg.seed, {family_key, n, sample});

    const LayoutGraph graph = source ? random_connected_subgraph(*source, n, layout_seed).graph
                                     : connected_erdos_renyi(n, cfg.p, layout_seed);
    const Rational reference =
        (source && cfg.scaling_reference == ScalingReference::kSourceLayout)
            ? average_degree(*source)
            : average_degree(graph);

    for (std::size_t k = 0; k < cfg.protocols.size(); ++k) {
      const ProtocolSpec& spec = cfg.protocols[k];
      BenchmarkRecord rec;
      rec.family = family;
      rec.n = n;
      rec.protocol = spec.protocol_label();
      rec.strategy = spec.strategy_label();
      rec.sample = sample;
      rec.seed = layout_seed.value;
      const RngSeed cell_seed = derive_seed(
          cfg.seed, {family_key, n, hash_string(rec.protocol), hash_string(rec.strategy), sample});

      Circuit circuit;
      if (spec.protocol == Protocol::kGrowing) {
        circuit = synthesize_growing(graph, cell_seed);
      } else {
        auto synthesis = synthesize_merging_detailed(graph, spec.strategy, cell_seed, reference);
        circuit = std::move(synthesis.circuit);
        rec.n_stars = synthesis.stars.size();
        double leaves = 0.0;
        for (const Star& star : synthesis.stars) leaves += static_cast<double>(star.degree());
        const double star_count = static_cast<double>(synthesis.stars.size());
        rec.mean_star_size = static_cast<double>(n) / star_count;
        if (reference.num != 0) rec.scaling_factor = leaves / star_count / reference.to_double();
      }
      rec.depth = depth(circuit);
      rec.n_2q = count_2q(circuit);
      rec.n_meas = count_measurements(circuit);

      if (cfg.verify) {
        const SimOutcome outcome = run(circuit, cell_seed);
        if (!is_ghz(outcome.tableau, n)) {
          throw InternalInvariant("synthesized circuit does not prepare GHZ (" + family + ", N=" +
                                  std::to_string(n) + ", " + rec.protocol + "/" + rec.strategy +
                                  ", sample " + std::to_string(sample) + ")");
        }
      }
      if (cfg.fidelity) {
        const Counts counts = sample_counts(circuit, cfg.shots, cell_seed, cfg.noise);
        rec.fidelity = hellinger_fidelity(ghz_ideal_distribution(n),
                                          counts_to_distribution(counts, cfg.shots));
      }
      records[size_index * per_size + k * cfg.samples + sample] = std::move(rec);
    }
  };

  parallel_for(cfg.sizes.size() * cfg.samples, cfg.threads ? cfg.threads : default_thread_count(),
               item);
  return records;
}

// ---------------------------------------------------------------------------
// CSV output

namespace detail {

inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_float(*v) : std::string();
}

}  // namespace detail

inline constexpr const char* kRawCsvHeader =
    "family,N,protocol,strategy,sample,seed,depth,n_2q,n_meas,mean_star_size,scaling_factor,"
    "fidelity\n";
inline constexpr const char* kAggregateCsvHeader =
    "family,N,protocol,strategy,metric,mean,std,max,count\n";

/// One row per record.
inline std::string raw_csv(const std::vector<BenchmarkRecord>& records) {
  std::string out = kRawCsvHeader;
  for (const auto& r : records) {
    out += r.family + ',' + std::to_string(r.n) + ',' + r.protocol + ',' + r.strategy + ',' +
           std::to_string(r.sample) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.depth) + ',' + std::to_string(r.n_2q) + ',' +
           std::to_string(r.n_meas) + ',' + detail::format_optional(r.mean_star_size) + ',' +
           detail::format_optional(r.scaling_factor) + ',' + detail::format_optional(r.fidelity) +
           '\n';
  }
  return out;
}

/// Per point (family, N, protocol, strategy), one row per figure of merit
/// with mean / population std / max / count. Points appear in order of first
/// occurrence; metrics with no values at a point are omitted.
inline std::string aggregate_csv(const std::vector<BenchmarkRecord>& records) {
  using Key = std::tuple<std::string, std::size_t, std::string, std::string>;
  static const char* const kMetrics[] = {"depth",          "n_2q",           "n_meas",
                                         "mean_star_size", "scaling_factor", "fidelity"};
  std::vector<Key> order;
  std::map<Key, std::map<std::string, std::vector<double>>> values;
  for (const auto& r : records) {
    Key key{r.family, r.n, r.protocol, r.strategy};
    if (!values.count(key)) order.push_back(key);
    auto& bucket = values[key];
    bucket["depth"].push_back(static_cast<double>(r.depth));
    bucket["n_2q"].push_back(static_cast<double>(r.n_2q));
    bucket["n_meas"].push_back(static_cast<double>(r.n_meas));
    if (r.mean_star_size) bucket["mean_star_size"].push_back(*r.mean_star_size);
    if (r.scaling_factor) bucket["scaling_factor"].push_back(*r.scaling_factor);
    if (r.fidelity) bucket["fidelity"].push_back(*r.fidelity);
  }
  std::string out = kAggregateCsvHeader;
  for (const Key& key : order) {
    const auto& [family, n, protocol, strategy] = key;
    const auto& bucket = values[key];
    for (const char* metric : kMetrics) {
      const auto it = bucket.find(metric);
      if (it == bucket.end()) continue;
      const SummaryStats s = summarize(it->second);
      out += family + ',' + std::to_string(n) + ',' + protocol + ',' + strategy + ',' + metric +
             ',' + detail::format_float(s.mean) + ',' + detail::format_float(s.stddev) + ',' +
             detail::format_float(s.max) + ',' + std::to_string(s.count) + '\n';
    }
  }
  return out;
}

/// Writes raw.csv and agg.csv into `dir` (created if missing).
inline void write_sweep_outputs(const std::vector<BenchmarkRecord>& records,
                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "raw.csv", std::ios::binary) << raw_csv(records);
  std::ofstream(dir / "agg.csv", std::ios::binary) << aggregate_csv(records);
}

// ---------------------------------------------------------------------------
// Config JSON

inline NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel noise{j.value("p1", 0.0), j.value("p2", 0.0), j.value("pm", 0.0), j.value("pr", 0.0)};
  noise.validate();
  return noise;
}

inline ProtocolSpec protocol_from_json(const nlohmann::json& j) {
  const auto name = j.at("protocol").get<std::string>();
  if (name == "growing" || name == "grow") return {Protocol::kGrowing, HighestDegree{}};
  if (name == "merging" || name == "merge") {
    return {Protocol::kMerging,
            j.contains("strategy") ? strategy_from_json(j) : StarSelectionStrategy{HighestDegree{}}};
  }
  throw InvalidConfig("unknown protocol '" + name + "'");
}

inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  try {
    SweepConfig cfg;
    const auto family = j.at("family").get<std::string>();
    if (family == "eagle_subgraph") {
      cfg.family = LayoutFamily::kEagleSubgraph;
    } else if (family == "rect_grid_subgraph") {
      cfg.family = LayoutFamily::kRectGridSubgraph;
    } else if (family == "erdos_renyi") {
      cfg.family = LayoutFamily::kErdosRenyi;
    } else {
      throw InvalidConfig("unknown layout family '" + family + "'");
    }
    cfg.p = j.value("p", cfg.p);
    cfg.rows = j.value("rows", cfg.rows);
    cfg.cols = j.value("cols", cfg.cols);
    cfg.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    for (const auto& spec : j.at("protocols")) cfg.protocols.push_back(protocol_from_json(spec));
    cfg.samples = j.value("samples", cfg.samples);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.fidelity = j.value("fidelity", cfg.fidelity);
    if (j.contains("noise") && !j.at("noise").is_null()) cfg.noise = noise_from_json(j.at("noise"));
    cfg.verify = j.value("verify", cfg.verify);
    const auto reference = j.value("scaling_reference", std::string("source"));
    if (reference == "source") {
      cfg.scaling_reference = ScalingReference::kSourceLayout;
    } else if (reference == "sample") {
      cfg.scaling_reference = ScalingReference::kSample;
    } else {
      throw InvalidConfig("scaling_reference must be 'source' or 'sample'");
    }
    cfg.seed = RngSeed{j.value("seed", std::uint64_t{0})};
    cfg.threads = j.value("threads", std::size_t{0});
    detail::validate_config(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(std::string("invalid sweep config: ") + ex.what());
  } catch (const InvalidParameter& ex) {
    throw InvalidConfig(ex.what());
  }
}

}  // namespace ghz
