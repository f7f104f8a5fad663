// Copyright 2026 The RaftGP Authors.
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

// raftgp: dataset generation, partitioning, evaluation and benchmark sweeps.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 internal error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "raftgp/error.hpp"
#include "raftgp/gnn.hpp"
#include "raftgp/graph.hpp"
#include "raftgp/pipeline.hpp"

namespace {

using namespace raftgp;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

struct SpecFlags {
  Index nodes = 0;
  std::uint64_t seed = 0;
  std::optional<double> ratio;
  std::optional<double> heterogeneity;
  std::optional<Index> blocks;
  std::optional<double> min_degree;
  std::optional<double> max_degree;
  std::optional<double> mean_degree;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nodes", nodes, "Number of nodes")->required();
    cmd->add_option("--ratio", ratio, "Within/between block edge ratio (2.5)");
    cmd->add_option("--heterogeneity", heterogeneity, "Max/min block size ratio (3)");
    cmd->add_option("--blocks", blocks, "Number of blocks (bracket default)");
    cmd->add_option("--min-degree", min_degree, "Expected-degree lower bound");
    cmd->add_option("--max-degree", max_degree, "Expected-degree upper bound");
    cmd->add_option("--mean-degree", mean_degree, "Mean expected degree");
  }

  BenchmarkSpec build() const {
    BenchmarkSpec spec = BenchmarkSpec::defaults_for(nodes, seed);
    if (ratio) spec.within_between_ratio = *ratio;
    if (heterogeneity) spec.size_heterogeneity = *heterogeneity;
    if (blocks) spec.num_blocks = *blocks;
    if (min_degree) spec.min_degree = *min_degree;
    if (max_degree) spec.max_degree = *max_degree;
    if (mean_degree) spec.mean_degree = *mean_degree;
    spec.validate();
    return spec;
  }
};

struct RunFlags {
  std::string variant = "raftgp-c";
  std::string features = "c";
  std::vector<Index> layers;
  Index epsilon = 5;
  int kmeans_restarts = 4;
  int kmeans_max_iters = 50;
  std::string lmod_norm = "graph";

  void attach(CLI::App* cmd) {
    cmd->add_option("--variant", variant,
                    "raftgp-c | raftgp-m | ablate-no-projection | ablate-no-gnn")
        ->capture_default_str();
    cmd->add_option("--features", features, "Feature matrix for ablations: c | m")
        ->capture_default_str();
    cmd->add_option("--layers", layers, "Layer widths, e.g. 256,128,64")
        ->delimiter(',');
    cmd->add_option("--epsilon", epsilon, "Minimum split-side size")
        ->capture_default_str();
    cmd->add_option("--kmeans-restarts", kmeans_restarts)->capture_default_str();
    cmd->add_option("--kmeans-iters", kmeans_max_iters)->capture_default_str();
    cmd->add_option("--lmod-norm", lmod_norm,
                    "Local-modularity edge count: graph (|E|) | subset (of U)")
        ->capture_default_str();
  }

  RunConfig build(std::uint64_t seed) const {
    RunConfig cfg;
    if (features == "c")
      cfg.features = FeatureKind::NormalizedAdjacency;
    else if (features == "m")
      cfg.features = FeatureKind::ReducedModularity;
    else
      throw ParameterError("--features must be c or m");
    if (!apply_variant_name(variant, cfg))
      throw ParameterError("unknown variant: " + variant);
    cfg.layer_dims = layers;
    if (!layers.empty()) LayerConfig{layers, 0}.validate();
    cfg.model.epsilon = epsilon;
    cfg.model.kmeans_restarts = kmeans_restarts;
    cfg.model.kmeans_max_iters = kmeans_max_iters;
    if (lmod_norm == "graph")
      cfg.model.normalization = LmodNormalization::Graph;
    else if (lmod_norm == "subset")
      cfg.model.normalization = LmodNormalization::Subset;
    else
      throw ParameterError("--lmod-norm must be graph or subset");
    cfg.model.validate();
    cfg.seed = seed;
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

int cmd_generate(const SpecFlags& flags, const fs::path& out_dir,
                 const std::string& prefix) {
  const BenchmarkSpec spec = flags.build();
  const Dataset data = generate_dataset(spec);
  fs::create_directories(out_dir);
  const fs::path graph_path = out_dir / (prefix + ".edges");
  const fs::path truth_path = out_dir / (prefix + ".truth");
  const fs::path params_path = out_dir / (prefix + ".params.json");
  save_edge_list(data.graph, graph_path);
  save_partition(data.truth, truth_path);
  const nlohmann::json sidecar = {{"spec", to_json(spec)},
                                  {"params", to_json(data.params)},
                                  {"num_edges", data.graph.num_edges()}};
  write_text(params_path, sidecar.dump(2) + "\n");
  std::cout << "nodes " << data.graph.num_nodes() << " edges "
            << data.graph.num_edges() << " blocks " << data.truth.num_blocks()
            << "\n";
  return 0;
}

int cmd_partition(const RunFlags& flags, std::uint64_t seed,
                  const fs::path& graph_path, const fs::path& out_path,
                  std::string report_path, const std::string& truth_path) {
  const Graph g = load_edge_list(graph_path);
  const RunConfig cfg = flags.build(seed);
  const RunResult result = run_partition(g, cfg);
  save_partition(result.partition, out_path);

  nlohmann::json report = {{"variant", variant_name(cfg)},
                           {"seed", seed},
                           {"num_nodes", g.num_nodes()},
                           {"num_edges", g.num_edges()},
                           {"num_blocks", result.partition.num_blocks()},
                           {"timings", to_json(result.timings)}};
  if (!truth_path.empty()) {
    const Partition truth = load_partition(truth_path);
    if (truth.size() != g.num_nodes())
      throw DataError("truth partition has " + std::to_string(truth.size()) +
                      " nodes, graph has " + std::to_string(g.num_nodes()));
    Metrics m = evaluate(g, result.partition, truth);
    m.runtime_seconds = result.timings.total_seconds;
    report["metrics"] = to_json(m);
  }
  if (report_path.empty()) report_path = out_path.string() + ".report.json";
  write_text(report_path, report.dump(2) + "\n");
  std::cout << "blocks " << result.partition.num_blocks() << " total_seconds "
            << result.timings.total_seconds << "\n";
  return 0;
}

int cmd_evaluate(const fs::path& pred_path, const fs::path& truth_path,
                 const fs::path& graph_path, double runtime) {
  const Graph g = load_edge_list(graph_path);
  const Partition pred = load_partition(pred_path);
  const Partition truth = load_partition(truth_path);
  if (pred.size() != truth.size() || pred.size() != g.num_nodes())
    throw DataError("node counts differ: pred " + std::to_string(pred.size()) +
                    ", truth " + std::to_string(truth.size()) + ", graph " +
                    std::to_string(g.num_nodes()));
  Metrics m = evaluate(g, pred, truth);
  m.runtime_seconds = runtime;
  std::cout << to_json(m).dump(2) << "\n";
  return 0;
}

int cmd_bench(const SpecFlags& spec_flags, const RunFlags& run_flags,
              std::uint64_t base_seed, int num_seeds, const std::string& json_path) {
  if (num_seeds < 1) throw ParameterError("--seeds must be >= 1");
  const BenchmarkSpec spec = spec_flags.build();
  const RunConfig cfg = run_flags.build(base_seed);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < num_seeds; ++i) seeds.push_back(base_seed + i);
  const BenchReport report = run_bench(spec, cfg, seeds);
  std::cout << format_bench_table(report);
  const std::string json = to_json(report).dump(2) + "\n";
  if (json_path.empty())
    std::cout << json;
  else
    write_text(json_path, json);
  if (report.successes == 0) {
    std::cerr << "bench: every run failed\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-projection graph partitioning"};
  app.require_subcommand(1);

  SpecFlags gen_spec;
  std::string out_dir = ".";
  std::string prefix = "graph";
  auto* generate = app.add_subcommand("generate", "Sample a benchmark SBM dataset");
  gen_spec.attach(generate);
  generate->add_option("--seed", gen_spec.seed)->capture_default_str();
  generate->add_option("--out-dir", out_dir)->capture_default_str();
  generate->add_option("--prefix", prefix)->capture_default_str();

  RunFlags part_flags;
  std::uint64_t part_seed = 0;
  std::string graph_path, out_path, report_path, truth_path;
  auto* partition = app.add_subcommand("partition", "Partition a graph");
  part_flags.attach(partition);
  partition->add_option("--seed", part_seed)->capture_default_str();
  partition->add_option("--graph", graph_path, "Edge list")->required();
  partition->add_option("--out", out_path, "Partition output")->required();
  partition->add_option("--report", report_path, "Report JSON (<out>.report.json)");
  partition->add_option("--truth", truth_path, "Ground truth for inline metrics");

  std::string pred_path, eval_truth, eval_graph;
  double runtime = 0.0;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a partition");
  evaluate_cmd->add_option("--pred", pred_path)->required();
  evaluate_cmd->add_option("--truth", eval_truth)->required();
  evaluate_cmd->add_option("--graph", eval_graph)->required();
  evaluate_cmd->add_option("--runtime", runtime, "Value for runtime_seconds");

  SpecFlags bench_spec;
  RunFlags bench_flags;
  int num_seeds = 5;
  std::string json_path;
  auto* bench = app.add_subcommand("bench", "Generate, partition and score over seeds");
  bench_spec.attach(bench);
  bench_flags.attach(bench);
  bench->add_option("--seed", bench_spec.seed, "First seed")->capture_default_str();
  bench->add_option("--seeds", num_seeds, "Number of seeds")->capture_default_str();
  bench->add_option("--json", json_path, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen_spec, out_dir, prefix);
    if (*partition)
      return cmd_partition(part_flags, part_seed, graph_path, out_path, report_path,
                           truth_path);
    if (*evaluate_cmd) return cmd_evaluate(pred_path, eval_truth, eval_graph, runtime);
    if (*bench) return cmd_bench(bench_spec, bench_flags, bench_spec.seed, num_seeds,
                                 json_path);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
