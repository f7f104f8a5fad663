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

#include "raftgp/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <exception>

#include "raftgp/error.hpp"
#include "raftgp/gnn.hpp"
#include "raftgp/rng.hpp"

namespace raftgp {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

bool apply_variant_name(std::string_view name, RunConfig& cfg) {
  if (name == "raftgp-c") {
    cfg.features = FeatureKind::NormalizedAdjacency;
    cfg.variant = Variant::Full;
  } else if (name == "raftgp-m") {
    cfg.features = FeatureKind::ReducedModularity;
    cfg.variant = Variant::Full;
  } else if (name == "ablate-no-projection") {
    cfg.variant = Variant::NoProjection;
  } else if (name == "ablate-no-gnn") {
    cfg.variant = Variant::NoGnn;
  } else {
    return false;
  }
  return true;
}

std::string variant_name(const RunConfig& cfg) {
  const char* suffix = cfg.features == FeatureKind::NormalizedAdjacency ? "c" : "m";
  switch (cfg.variant) {
    case Variant::Full:
      return std::string("raftgp-") + suffix;
    case Variant::NoProjection:
      return std::string("ablate-no-projection-") + suffix;
    case Variant::NoGnn:
      return std::string("ablate-no-gnn-") + suffix;
  }
  return "unknown";
}

std::uint64_t generation_seed(std::uint64_t seed) { return derive_seed(seed, "generation"); }
std::uint64_t projection_seed(std::uint64_t seed) { return derive_seed(seed, "projection"); }
std::uint64_t weights_seed(std::uint64_t seed) { return derive_seed(seed, "weights"); }
std::uint64_t kmeans_seed(std::uint64_t seed) { return derive_seed(seed, "kmeans"); }

RunResult run_partition(const Graph& g, const RunConfig& cfg) {
  const Stopwatch total;
  LayerConfig layers{cfg.layer_dims.empty() ? default_layer_dims(g.num_nodes())
                                            : cfg.layer_dims,
                     weights_seed(cfg.seed)};
  layers.validate();
  ModelSelectConfig model = cfg.model;
  model.seed = kmeans_seed(cfg.seed);
  model.validate();

  RunResult result;
  EmbeddingMatrix<double> z;
  {
    const Stopwatch feat;
    const auto x = feature_matrix<double>(g, cfg.features);
    if (cfg.variant == Variant::NoProjection) {
      result.timings.feat_seconds = feat.seconds();
      const Stopwatch emb;
      layers.dims.front() = g.num_nodes();
      z = forward<double>(g, x, layers);
      result.timings.emb_seconds = emb.seconds();
    } else {
      auto y = gaussian_projection<double>(x, layers.dims.front(),
                                           projection_seed(cfg.seed));
      result.timings.feat_seconds = feat.seconds();
      const Stopwatch emb;
      z = cfg.variant == Variant::NoGnn ? std::move(y) : forward<double>(g, y, layers);
      result.timings.emb_seconds = emb.seconds();
    }
  }
  const Stopwatch model_time;
  result.partition = hierarchical_partition<double>(g, z, model);
  result.timings.model_seconds = model_time.seconds();
  result.timings.total_seconds = total.seconds();
  return result;
}

Dataset generate_dataset(const BenchmarkSpec& spec) {
  Dataset d;
  d.spec = spec;
  BenchmarkSpec seeded = spec;
  seeded.seed = generation_seed(spec.seed);
  d.params = build_benchmark_params(seeded);
  d.graph = sample_sbm(d.params, derive_seed(seeded.seed, "sampling"));
  d.truth = Partition(d.params.assignment, static_cast<BlockId>(d.params.num_blocks()));
  return d;
}

BenchReport run_bench(const BenchmarkSpec& spec, const RunConfig& cfg,
                      std::span<const std::uint64_t> seeds) {
  BenchReport report;
  report.variant = variant_name(cfg);
  report.num_nodes = spec.num_nodes;
  for (std::uint64_t seed : seeds) {
    BenchRun run;
    run.seed = seed;
    try {
      BenchmarkSpec s = spec;
      s.seed = seed;
      const Dataset data = generate_dataset(s);
      RunConfig rc = cfg;
      rc.seed = seed;
      const RunResult r = run_partition(data.graph, rc);
      run.num_edges = data.graph.num_edges();
      run.metrics = evaluate(data.graph, r.partition, data.truth);
      run.metrics.runtime_seconds = r.timings.total_seconds;
      run.timings = r.timings;
      run.ok = true;
    } catch (const std::exception& e) {
      run.error = e.what();
    }
    report.runs.push_back(std::move(run));
  }

  Metrics& m = report.mean_metrics;
  StageTimings& t = report.mean_timings;
  for (const auto& run : report.runs) {
    if (!run.ok) continue;
    ++report.successes;
    m.accuracy += run.metrics.accuracy;
    m.ari += run.metrics.ari;
    m.precision += run.metrics.precision;
    m.recall += run.metrics.recall;
    m.f1 += run.metrics.f1;
    m.modularity += run.metrics.modularity;
    m.num_blocks_pred += run.metrics.num_blocks_pred;
    m.num_blocks_true += run.metrics.num_blocks_true;
    m.runtime_seconds += run.metrics.runtime_seconds;
    t.feat_seconds += run.timings.feat_seconds;
    t.emb_seconds += run.timings.emb_seconds;
    t.model_seconds += run.timings.model_seconds;
    t.total_seconds += run.timings.total_seconds;
  }
  if (report.successes > 0) {
    const double k = static_cast<double>(report.successes);
    m.accuracy /= k;
    m.ari /= k;
    m.precision /= k;
    m.recall /= k;
    m.f1 /= k;
    m.modularity /= k;
    m.runtime_seconds /= k;
    t.feat_seconds /= k;
    t.emb_seconds /= k;
    t.model_seconds /= k;
    t.total_seconds /= k;
    // Block counts are averaged and rounded to stay integral.
    m.num_blocks_pred = static_cast<Index>(
        static_cast<double>(m.num_blocks_pred) / k + 0.5);
    m.num_blocks_true = static_cast<Index>(
        static_cast<double>(m.num_blocks_true) / k + 0.5);
  }
  return report;
}

nlohmann::json to_json(const Metrics& m) {
  return {{"accuracy", m.accuracy},
          {"ari", m.ari},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"modularity", m.modularity},
          {"num_blocks_pred", m.num_blocks_pred},
          {"num_blocks_true", m.num_blocks_true},
          {"runtime_seconds", m.runtime_seconds}};
}

nlohmann::json to_json(const StageTimings& t) {
  return {{"feat_seconds", t.feat_seconds},
          {"emb_seconds", t.emb_seconds},
          {"model_seconds", t.model_seconds},
          {"total_seconds", t.total_seconds}};
}

nlohmann::json to_json(const BenchmarkSpec& spec) {
  return {{"num_nodes", spec.num_nodes},
          {"seed", spec.seed},
          {"within_between_ratio", spec.within_between_ratio},
          {"size_heterogeneity", spec.size_heterogeneity},
          {"num_blocks", spec.num_blocks},
          {"min_degree", spec.min_degree},
          {"max_degree", spec.max_degree},
          {"mean_degree", spec.mean_degree}};
}

nlohmann::json to_json(const SbmParams& params) {
  nlohmann::json omega = nlohmann::json::array();
  for (Index r = 0; r < params.omega.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index s = 0; s < params.omega.cols(); ++s) row.push_back(params.omega(r, s));
    omega.push_back(std::move(row));
  }
  const auto mass = expected_edge_mass(params);
  return {{"num_nodes", params.num_nodes()},
          {"num_blocks", params.num_blocks()},
          {"theta", params.theta},
          {"assignment", params.assignment},
          {"omega", std::move(omega)},
          {"expected_within_mass", mass.within},
          {"expected_between_mass", mass.between}};
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : report.runs) {
    nlohmann::json j = {{"seed", run.seed}, {"ok", run.ok}};
    if (run.ok) {
      j["num_edges"] = run.num_edges;
      j["metrics"] = to_json(run.metrics);
      j["timings"] = to_json(run.timings);
    } else {
      j["error"] = run.error;
    }
    runs.push_back(std::move(j));
  }
  return {{"variant", report.variant},
          {"num_nodes", report.num_nodes},
          {"runs", std::move(runs)},
          {"successes", report.successes},
          {"mean",
           {{"metrics", to_json(report.mean_metrics)},
            {"timings", to_json(report.mean_timings)}}}};
}

std::string format_bench_table(const BenchReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %8s %4s %4s %7s %7s %7s %7s %7s %9s %9s %9s %9s\n",
                "seed", "|E|", "K", "Kt", "acc", "ari", "f1", "recall", "prec",
                "feat(s)", "emb(s)", "model(s)", "total(s)");
  out += line;
  auto row = [&](const std::string& label, Index edges, const Metrics& m,
                 const StageTimings& t) {
    std::snprintf(line, sizeof line,
                  "%-8s %8lld %4lld %4lld %7.4f %7.4f %7.4f %7.4f %7.4f %9.4f %9.4f "
                  "%9.4f %9.4f\n",
                  label.c_str(), static_cast<long long>(edges),
                  static_cast<long long>(m.num_blocks_pred),
                  static_cast<long long>(m.num_blocks_true), m.accuracy, m.ari, m.f1,
                  m.recall, m.precision, t.feat_seconds, t.emb_seconds,
                  t.model_seconds, t.total_seconds);
    out += line;
  };
  Index edge_sum = 0;
  for (const auto& run : report.runs) {
    if (run.ok) {
      row(std::to_string(run.seed), run.num_edges, run.metrics, run.timings);
      edge_sum += run.num_edges;
    } else {
      out += std::to_string(run.seed) + "  FAILED: " + run.error + "\n";
    }
  }
  if (report.successes > 0)
    row("mean", edge_sum / report.successes, report.mean_metrics, report.mean_timings);
  return out;
}

}  // namespace raftgp
