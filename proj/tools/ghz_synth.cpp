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

// ghz-synth: layout generation, GHZ circuit synthesis, simulation, QASM
// export and benchmark sweeps.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ghz/ghz.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ghz::Error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ghz::Error("'" + path + "' is not valid JSON: " + ex.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ghz::Error("cannot write '" + path + "'");
  out << text;
}

/// "highest_degree", "scaling_factor:1.3" or "absolute_size:4".
ghz::StarSelectionStrategy parse_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (name == "highest_degree" && arg.empty()) return ghz::HighestDegree{};
    if (name == "scaling_factor" && !arg.empty()) {
      ghz::StarSelectionStrategy s = ghz::ScalingFactor{std::stod(arg)};
      ghz::validate(s);
      return s;
    }
    if (name == "absolute_size" && !arg.empty()) {
      const long long size = std::stoll(arg);
      if (size < 1) throw UsageError("absolute size must be at least 1");
      return ghz::AbsoluteSize{static_cast<std::size_t>(size)};
    }
  } catch (const std::invalid_argument&) {
  } catch (const ghz::InvalidParameter& ex) {
    throw UsageError(ex.what());
  }
  throw UsageError("bad --strategy '" + text +
                   "' (expected highest_degree, scaling_factor:F or absolute_size:S)");
}

ghz::NoiseModel parse_noise(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad --noise value '" + item + "'");
    }
  }
  if (values.size() != 4) throw UsageError("--noise expects four values: p1,p2,pm,pr");
  ghz::NoiseModel noise{values[0], values[1], values[2], values[3]};
  try {
    noise.validate();
  } catch (const ghz::InvalidParameter& ex) {
    throw UsageError(ex.what());
  }
  return noise;
}

struct LayoutArgs {
  std::string family = "eagle";
  std::size_t rows = 12;
  std::size_t cols = 9;
  std::size_t n = 20;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  std::string out;
};

struct SynthArgs {
  std::string protocol = "merge";
  std::string strategy = "highest_degree";
  std::string layout;
  std::string out;
  std::string qasm;
  std::uint64_t seed = 0;
};

struct SimulateArgs {
  std::string circuit;
  std::uint64_t shots = 4096;
  std::uint64_t seed = 0;
  std::string noise;
};

struct BenchArgs {
  std::string config;
  std::string out_dir = ".";
};

struct VerifyArgs {
  std::size_t seeds = 5;
  std::uint64_t seed = 0;
};

int cmd_layout(const LayoutArgs& a) {
  ghz::LayoutGraph g;
  if (a.family == "eagle") {
    g = ghz::eagle_127();
  } else if (a.family == "grid") {
    if (a.rows == 0 || a.cols == 0) throw UsageError("--rows and --cols must be positive");
    g = ghz::rect_grid(a.rows, a.cols);
  } else if (a.family == "er") {
    if (a.n == 0) throw UsageError("--n must be positive");
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
    g = ghz::connected_erdos_renyi(a.n, a.p, ghz::RngSeed{a.seed});
  } else {
    throw UsageError("unknown --family '" + a.family + "' (expected eagle, grid or er)");
  }
  if (a.sample > 0) {
    if (a.sample > g.node_count()) throw UsageError("--sample exceeds the layout size");
    g = ghz::random_connected_subgraph(g, a.sample, ghz::RngSeed{a.seed}).graph;
  }
  write_text(a.out, ghz::to_json(g).dump() + "\n");
  return 0;
}

int cmd_synth(const SynthArgs& a) {
  if (a.protocol != "merge" && a.protocol != "grow") {
    throw UsageError("unknown --protocol '" + a.protocol + "' (expected merge or grow)");
  }
  const auto strategy = parse_strategy(a.strategy);
  const ghz::LayoutGraph g = ghz::layout_from_json(read_json(a.layout));
  const ghz::Circuit c = a.protocol == "grow"
                             ? ghz::synthesize_growing(g, ghz::RngSeed{a.seed})
                             : ghz::synthesize_merging(g, strategy, ghz::RngSeed{a.seed});
  if (!a.out.empty()) write_text(a.out, ghz::to_json(c).dump(1) + "\n");
  if (!a.qasm.empty()) write_text(a.qasm, ghz::export_qasm(c));
  std::cerr << "qubits=" << c.qubit_count() << " depth=" << ghz::depth(c)
            << " n_2q=" << ghz::count_2q(c) << " n_meas=" << ghz::count_measurements(c) << "\n";
  if (a.out.empty() && a.qasm.empty()) std::cout << ghz::to_json(c).dump(1) << "\n";
  return 0;
}

int cmd_simulate(const SimulateArgs& a) {
  if (a.shots < 1) throw UsageError("--shots must be at least 1");
  std::optional<ghz::NoiseModel> noise;
  if (!a.noise.empty()) noise = parse_noise(a.noise);
  const ghz::Circuit c = ghz::circuit_from_json(read_json(a.circuit));
  const ghz::RngSeed seed{a.seed};
  const ghz::Counts counts = ghz::sample_counts(c, a.shots, seed, noise);
  for (const auto& [bits, count] : counts) std::cout << bits << " " << count << "\n";
  const double fidelity = ghz::hellinger_fidelity(ghz::ghz_ideal_distribution(c.qubit_count()),
                                                  ghz::counts_to_distribution(counts, a.shots));
  std::cout << "hellinger_fidelity " << ghz::detail::format_float(fidelity) << "\n";
  if (!noise) {
    const bool exact = ghz::is_ghz(ghz::run(c, seed).tableau, c.qubit_count());
    std::cout << "is_ghz " << (exact ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  ghz::SweepConfig cfg;
  try {
    cfg = ghz::sweep_config_from_json(read_json(a.config));
  } catch (const ghz::InvalidConfig& ex) {
    throw UsageError(ex.what());
  }
  const auto records = ghz::run_sweep(cfg);
  ghz::write_sweep_outputs(records, a.out_dir);
  std::cerr << "wrote " << records.size() << " records to " << a.out_dir << "\n";
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  bool ok = true;
  for (const auto& check : ghz::run_verification(a.seeds, ghz::RngSeed{a.seed})) {
    std::cout << (check.passed() ? "PASS " : "FAIL ") << check.name << " (" << check.cases
              << " cases";
    if (!check.passed()) std::cout << ", " << check.failures << " failed, first: " << check.first_failure;
    std::cout << ")\n";
    ok = ok && check.passed();
  }
  return ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ state preparation on constrained qubit connectivity"};
  app.require_subcommand(1);

  LayoutArgs layout_args;
  auto* layout = app.add_subcommand("layout", "Emit a layout graph as JSON");
  layout->add_option("--family", layout_args.family, "eagle | grid | er")->capture_default_str();
  layout->add_option("--rows", layout_args.rows, "Grid rows")->capture_default_str();
  layout->add_option("--cols", layout_args.cols, "Grid columns")->capture_default_str();
  layout->add_option("--n", layout_args.n, "Erdos-Renyi node count")->capture_default_str();
  layout->add_option("--p", layout_args.p, "Erdos-Renyi edge probability")->capture_default_str();
  layout->add_option("--seed", layout_args.seed, "Random seed")->capture_default_str();
  layout->add_option("--sample", layout_args.sample,
                     "Sample a random connected subgraph of this many nodes");
  layout->add_option("--out", layout_args.out, "Output file (default stdout)");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Synthesize a GHZ preparation circuit");
  synth->add_option("--protocol", synth_args.protocol, "merge | grow")->capture_default_str();
  synth->add_option("--strategy", synth_args.strategy,
                    "highest_degree | scaling_factor:F | absolute_size:S")
      ->capture_default_str();
  synth->add_option("--layout", synth_args.layout, "Layout JSON file")->required();
  synth->add_option("--out", synth_args.out, "Circuit JSON output file");
  synth->add_option("--qasm", synth_args.qasm, "OpenQASM 3 output file");
  synth->add_option("--seed", synth_args.seed, "Random seed")->capture_default_str();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Sample a circuit and score it against GHZ");
  simulate->add_option("--circuit", sim_args.circuit, "Circuit JSON file")->required();
  simulate->add_option("--shots", sim_args.shots, "Number of shots")->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "Random seed")->capture_default_str();
  simulate->add_option("--noise", sim_args.noise, "Noise probabilities p1,p2,pm,pr");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("--config", bench_args.config, "Sweep config JSON file")->required();
  bench->add_option("--out-dir", bench_args.out_dir, "Directory for raw.csv and agg.csv")
      ->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the self-check suite on small instances");
  verify->add_option("--seeds", verify_args.seeds, "Random instances per configuration")
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "Master seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*layout) return cmd_layout(layout_args);
    if (*synth) return cmd_synth(synth_args);
    if (*simulate) return cmd_simulate(sim_args);
    if (*bench) return cmd_bench(bench_args);
    if (*verify) return cmd_verify(verify_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
