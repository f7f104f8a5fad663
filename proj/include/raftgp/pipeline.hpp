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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "raftgp/features.hpp"
#include "raftgp/graph.hpp"
#include "raftgp/metrics.hpp"
#include "raftgp/model_select.hpp"
#include "raftgp/sbm.hpp"

namespace raftgp {

enum class Variant {
  Full,          // projection, GCN, model selection
  NoProjection,  // sparse X fed straight into the GCN
  NoGnn,         // projected Y fed straight into model selection
};

struct RunConfig {
  FeatureKind features = FeatureKind::NormalizedAdjacency;
  Variant variant = Variant::Full;
  /// Empty means default_layer_dims(N).
  std::vector<Index> layer_dims;
  /// Only epsilon and the k-means knobs are read; the seed comes from `seed`.
  ModelSelectConfig model;
  std::uint64_t seed = 0;
};

/// Parses "raftgp-c", "raftgp-m", "ablate-no-projection", "ablate-no-gnn".
/// The ablations keep `features` as given. Returns false on unknown names.
bool apply_variant_name(std::string_view name, RunConfig& cfg);
std::string variant_name(const RunConfig& cfg);

struct StageTimings {
  double feat_seconds = 0.0;
  double emb_seconds = 0.0;
  double model_seconds = 0.0;
  double total_seconds = 0.0;
};

struct RunResult {
  Partition partition;
  StageTimings timings;
};

/// Global seed substreams. Datasets depend only on "generation", so every
/// variant run with the same seed sees the same graph.
std::uint64_t generation_seed(std::uint64_t seed);
std::uint64_t projection_seed(std::uint64_t seed);
std::uint64_t weights_seed(std::uint64_t seed);
std::uint64_t kmeans_seed(std::uint64_t seed);

RunResult run_partition(const Graph& g, const RunConfig& cfg);

struct Dataset {
  BenchmarkSpec spec;
  SbmParams params;
  Graph graph;
  Partition truth;
};

/// Parameters from build_benchmark_params and a sampled graph, both seeded
/// from generation_seed(spec.seed).
Dataset generate_dataset(const BenchmarkSpec& spec);

struct BenchRun {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Index num_edges = 0;
  Metrics metrics;
  StageTimings timings;
};

struct BenchReport {
  std::string variant;
  Index num_nodes = 0;
  std::vector<BenchRun> runs;
  Index successes = 0;
  Metrics mean_metrics;
  StageTimings mean_timings;
};

/// Generates one dataset per seed (spec.seed replaced), runs the variant
/// with the same seed and averages over successful runs.
BenchReport run_bench(const BenchmarkSpec& spec, const RunConfig& cfg,
                      std::span<const std::uint64_t> seeds);

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const StageTimings& t);
nlohmann::json to_json(const BenchmarkSpec& spec);
nlohmann::json to_json(const SbmParams& params);
nlohmann::json to_json(const BenchReport& report);

/// Fixed-width table of per-seed rows followed by the mean.
std::string format_bench_table(const BenchReport& report);

}  // namespace raftgp
