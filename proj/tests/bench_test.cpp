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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghz/ghz.hpp"

namespace ghz {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

SweepConfig small_config(LayoutFamily family) {
  SweepConfig cfg;
  cfg.family = family;
  cfg.rows = 5;
  cfg.cols = 5;
  cfg.p = 0.3;
  cfg.sizes = {4, 12};
  cfg.samples = 6;
  cfg.protocols = {{Protocol::kGrowing, HighestDegree{}},
                   {Protocol::kMerging, HighestDegree{}},
                   {Protocol::kMerging, ScalingFactor{0.7}},
                   {Protocol::kMerging, AbsoluteSize{2}}};
  cfg.seed = RngSeed{99};
  return cfg;
}

TEST(RunSweep, SingleGrowingRecord) {
  SweepConfig cfg;
  cfg.sizes = {5};
  cfg.samples = 1;
  cfg.protocols = {{Protocol::kGrowing, HighestDegree{}}};
  const auto records = run_sweep(cfg);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].n_meas, 0u);
  EXPECT_EQ(records[0].n_2q, 4u);
  EXPECT_EQ(records[0].family, "eagle_subgraph");
  EXPECT_EQ(records[0].strategy, "none");
  EXPECT_FALSE(records[0].mean_star_size.has_value());
}

TEST(RunSweep, SizeBoundsPerFamily) {
  SweepConfig cfg;
  cfg.samples = 1;
  cfg.protocols = {{Protocol::kGrowing, HighestDegree{}}};
  cfg.sizes = {127};
  EXPECT_NO_THROW(run_sweep(cfg));
  cfg.sizes = {128};
  EXPECT_THROW(run_sweep(cfg), InvalidConfig);
  cfg.family = LayoutFamily::kRectGridSubgraph;
  cfg.rows = 3;
  cfg.cols = 3;
  cfg.sizes = {10};
  EXPECT_THROW(run_sweep(cfg), InvalidConfig);
  cfg.sizes = {0};
  EXPECT_THROW(run_sweep(cfg), InvalidConfig);
}

TEST(RunSweep, RecordIdentitiesAndOrdering) {
  for (LayoutFamily family :
       {LayoutFamily::kEagleSubgraph, LayoutFamily::kRectGridSubgraph, LayoutFamily::kErdosRenyi}) {
    const SweepConfig cfg = small_config(family);
    const auto records = run_sweep(cfg);
    ASSERT_EQ(records.size(), cfg.sizes.size() * cfg.protocols.size() * cfg.samples);
    std::size_t i = 0;
    for (std::size_t n : cfg.sizes) {
      for (const auto& spec : cfg.protocols) {
        for (std::size_t s = 0; s < cfg.samples; ++s, ++i) {
          const BenchmarkRecord& r = records[i];
          EXPECT_EQ(r.n, n);
          EXPECT_EQ(r.protocol, spec.protocol_label());
          EXPECT_EQ(r.strategy, spec.strategy_label());
          EXPECT_EQ(r.sample, s);
          if (r.protocol == "growing") {
            EXPECT_EQ(r.n_meas, 0u);
            EXPECT_EQ(r.n_2q, n - 1);
          } else {
            EXPECT_EQ(r.n_2q, n - 1 + r.n_meas);
            EXPECT_EQ(r.n_meas, r.n_stars - 1);
            EXPECT_NEAR(*r.mean_star_size, static_cast<double>(n) / r.n_stars, 1e-12);
          }
        }
      }
    }
  }
}

TEST(RunSweep, ProtocolsShareTheLayoutOfASample) {
  const auto records = run_sweep(small_config(LayoutFamily::kEagleSubgraph));
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::uint64_t>> seeds;
  for (const auto& r : records) seeds[{r.n, r.sample}].insert(r.seed);
  for (const auto& [key, set] : seeds) EXPECT_EQ(set.size(), 1u);
}

TEST(RunSweep, IndependentOfThreadCount) {
  SweepConfig cfg = small_config(LayoutFamily::kRectGridSubgraph);
  cfg.fidelity = true;
  cfg.shots = 64;
  cfg.noise = NoiseModel{0.01, 0.02, 0.01, 0.01};
  cfg.threads = 1;
  const std::string serial = raw_csv(run_sweep(cfg));
  for (std::size_t threads : {2, 3, 8}) {
    cfg.threads = threads;
    EXPECT_EQ(raw_csv(run_sweep(cfg)), serial) << threads << " threads";
  }
}

TEST(RunSweep, AddingAStrategyDoesNotPerturbOtherCells) {
  SweepConfig cfg = small_config(LayoutFamily::kErdosRenyi);
  cfg.fidelity = true;
  cfg.shots = 32;
  cfg.noise = NoiseModel{0.01, 0.02, 0.01, 0.01};
  cfg.protocols = {{Protocol::kMerging, HighestDegree{}}};
  const auto base = run_sweep(cfg);
  cfg.protocols.insert(cfg.protocols.begin(), {Protocol::kMerging, ScalingFactor{1.3}});
  const auto wider = run_sweep(cfg);
  std::vector<BenchmarkRecord> kept;
  for (const auto& r : wider) {
    if (r.strategy == "highest_degree") kept.push_back(r);
  }
  EXPECT_EQ(raw_csv(kept), raw_csv(base));
}

TEST(Csv, HeaderOnlyForNoRecords) {
  EXPECT_EQ(raw_csv({}),
            "family,N,protocol,strategy,sample,seed,depth,n_2q,n_meas,mean_star_size,"
            "scaling_factor,fidelity\n");
  EXPECT_EQ(aggregate_csv({}), "family,N,protocol,strategy,metric,mean,std,max,count\n");
}

TEST(Csv, SingleRecord) {
  BenchmarkRecord r;
  r.family = "eagle_subgraph";
  r.n = 5;
  r.protocol = "merging";
  r.strategy = "highest_degree";
  r.seed = 7;
  r.depth = 9;
  r.n_2q = 5;
  r.n_meas = 1;
  r.mean_star_size = 2.5;
  r.scaling_factor = 1.0 / 3.0;
  const auto raw = lines(raw_csv({r}));
  ASSERT_EQ(raw.size(), 2u);
  EXPECT_EQ(raw[1], "eagle_subgraph,5,merging,highest_degree,0,7,9,5,1,2.5,0.333333333,");

  // One aggregate point: a row per metric that has values, all for that point.
  const auto agg = lines(aggregate_csv({r}));
  ASSERT_EQ(agg.size(), 6u);
  std::set<std::string> points;
  for (std::size_t i = 1; i < agg.size(); ++i) {
    const auto f = fields(agg[i]);
    points.insert(f[0] + f[1] + f[2] + f[3]);
    EXPECT_EQ(f[8], "1");
    EXPECT_EQ(f[6], "0");
  }
  EXPECT_EQ(points.size(), 1u);
  EXPECT_EQ(agg[1], "eagle_subgraph,5,merging,highest_degree,depth,9,0,9,1");
}

TEST(Csv, AggregateMeanMatchesRawColumn) {
  SweepConfig cfg;
  cfg.sizes = {30};
  cfg.samples = 100;
  cfg.protocols = {{Protocol::kMerging, HighestDegree{}}};
  const auto records = run_sweep(cfg);
  const auto raw = lines(raw_csv(records));
  ASSERT_EQ(raw.size(), 101u);
  double depth_sum = 0.0;
  double star_sum = 0.0;
  double depth_max = 0.0;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const auto f = fields(raw[i]);
    depth_sum += std::stod(f[6]);
    depth_max = std::max(depth_max, std::stod(f[6]));
    star_sum += std::stod(f[9]);
  }
  std::map<std::string, std::vector<std::string>> by_metric;
  for (const auto& line : lines(aggregate_csv(records))) {
    const auto f = fields(line);
    by_metric[f[4]] = f;
  }
  EXPECT_NEAR(std::stod(by_metric["depth"][5]), depth_sum / 100, 1e-7);
  EXPECT_NEAR(std::stod(by_metric["depth"][7]), depth_max, 0.0);
  EXPECT_NEAR(std::stod(by_metric["mean_star_size"][5]), star_sum / 100, 1e-7);
  EXPECT_EQ(by_metric["depth"][8], "100");
}

TEST(Csv, ByteIdenticalRerun) {
  const auto dir = std::filesystem::temp_directory_path() / "ghz_bench_rerun";
  std::filesystem::remove_all(dir);
  const SweepConfig cfg = small_config(LayoutFamily::kEagleSubgraph);
  write_sweep_outputs(run_sweep(cfg), dir / "a");
  write_sweep_outputs(run_sweep(cfg), dir / "b");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (const char* name : {"raw.csv", "agg.csv"}) {
    const std::string a = slurp(dir / "a" / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / name)) << name;
  }
  std::filesystem::remove_all(dir);
}

TEST(Config, ParseJson) {
  const auto cfg = sweep_config_from_json(nlohmann::json::parse(R"({
    "family": "rect_grid_subgraph", "rows": 4, "cols": 6, "sizes": [3, 24],
    "protocols": [{"protocol": "growing"},
                  {"protocol": "merging", "strategy": "absolute_size", "s": 3}],
    "samples": 5, "shots": 128, "fidelity": true,
    "noise": {"p1": 0.001, "p2": 0.01, "pm": 0.01, "pr": 0.01}, "seed": 12})"));
  EXPECT_EQ(cfg.family_label(), "rect_grid_subgraph_4x6");
  EXPECT_EQ(cfg.sizes, (std::vector<std::size_t>{3, 24}));
  ASSERT_EQ(cfg.protocols.size(), 2u);
  EXPECT_EQ(cfg.protocols[1].strategy, StarSelectionStrategy{AbsoluteSize{3}});
  EXPECT_EQ(cfg.samples, 5u);
  ASSERT_TRUE(cfg.noise.has_value());
  EXPECT_EQ(cfg.noise->p2, 0.01);
  EXPECT_EQ(cfg.seed.value, 12u);
  EXPECT_EQ(cfg.samples, 5u);
}

TEST(Config, Defaults) {
  const auto cfg = sweep_config_from_json(nlohmann::json::parse(
      R"({"family": "erdos_renyi", "p": 0.1, "sizes": [10], "protocols": [{"protocol": "growing"}]})"));
  EXPECT_EQ(cfg.samples, 100u);
  EXPECT_EQ(cfg.shots, 4096u);
  EXPECT_FALSE(cfg.fidelity);
  EXPECT_FALSE(cfg.noise.has_value());
  EXPECT_EQ(cfg.family_label(), "erdos_renyi_p0.1");
}

TEST(Config, Errors) {
  auto parse = [](const char* text) { return sweep_config_from_json(nlohmann::json::parse(text)); };
  EXPECT_THROW(parse(R"({"family": "torus", "sizes": [3], "protocols": [{"protocol": "growing"}]})"),
               InvalidConfig);
  EXPECT_THROW(parse(R"({"family": "eagle_subgraph", "sizes": [200], "protocols": [{"protocol": "growing"}]})"),
               InvalidConfig);
  EXPECT_THROW(parse(R"({"family": "eagle_subgraph", "sizes": [3], "protocols": [{"protocol": "teleport"}]})"),
               InvalidConfig);
  EXPECT_THROW(parse(R"({"family": "eagle_subgraph", "sizes": [3], "samples": 0, "protocols": [{"protocol": "growing"}]})"),
               InvalidConfig);
  EXPECT_THROW(parse(R"({"family": "eagle_subgraph", "sizes": [3], "noise": {"p1": 2}, "protocols": [{"protocol": "growing"}]})"),
               InvalidConfig);
  EXPECT_THROW(parse(R"({"family": "eagle_subgraph", "protocols": [{"protocol": "growing"}]})"),
               InvalidConfig);
}

TEST(ParallelFor, CoversEveryIndexOnceAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 57) throw InvalidInput("boom");
                            }),
               InvalidInput);
}

TEST(ThreadCount, EnvironmentCap) {
  setenv("GHZ_SYNTH_THREADS", "1", 1);
  EXPECT_EQ(default_thread_count(), 1u);
  unsetenv("GHZ_SYNTH_THREADS");
  EXPECT_GE(default_thread_count(), 1u);
}

}  // namespace
}  // namespace ghz
