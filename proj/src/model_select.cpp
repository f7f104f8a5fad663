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

#include "raftgp/model_select.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "raftgp/error.hpp"
#include "raftgp/rng.hpp"

namespace raftgp {

void ModelSelectConfig::validate() const {
  if (epsilon < 1) throw ParameterError("epsilon must be >= 1");
  if (kmeans_max_iters < 1) throw ParameterError("kmeans_max_iters must be >= 1");
  if (kmeans_restarts < 1) throw ParameterError("kmeans_restarts must be >= 1");
  if (!(kmeans_tol >= 0.0)) throw ParameterError("kmeans_tol must be >= 0");
}

namespace {

// Scratch labels reused across LMod evaluations; all entries are -1 between
// calls.
class LmodWorkspace {
 public:
  explicit LmodWorkspace(const Graph& g) : g_(g), label_(g.num_nodes(), -1) {}

  struct Result {
    double value = 0.0;
    double total_degree = 0.0;
  };

  Result evaluate(std::span<const std::vector<NodeId>> blocks,
                  LmodNormalization normalization) {
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      for (NodeId v : blocks[r]) {
        if (v < 0 || v >= g_.num_nodes()) {
          reset(blocks, r);
          throw BoundsError("node " + std::to_string(v) + " outside graph");
        }
        if (label_[v] != -1) {
          reset(blocks, r);
          throw ParameterError("blocks overlap at node " + std::to_string(v));
        }
        label_[v] = static_cast<std::int32_t>(r);
      }
    }
    std::vector<double> intra(blocks.size(), 0.0);
    std::vector<double> degree_sum(blocks.size(), 0.0);
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      std::int64_t ends = 0;
      std::int64_t deg = 0;
      for (NodeId v : blocks[r]) {
        const auto nb = g_.neighbors(v);
        deg += static_cast<std::int64_t>(nb.size());
        for (NodeId u : nb) ends += (label_[u] == static_cast<std::int32_t>(r));
      }
      intra[r] = static_cast<double>(ends / 2);
      degree_sum[r] = static_cast<double>(deg);
    }
    reset(blocks, blocks.size());

    Result out;
    for (double d : degree_sum) out.total_degree += d;
    if (out.total_degree <= 0.0) return out;
    const double two_e = normalization == LmodNormalization::Subset
                             ? out.total_degree
                             : 2.0 * static_cast<double>(g_.num_edges());
    const double e = two_e / 2.0;
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      const double frac = degree_sum[r] / two_e;
      out.value += intra[r] / e - frac * frac;
    }
    return out;
  }

 private:
  void reset(std::span<const std::vector<NodeId>> blocks, std::size_t upto) {
    for (std::size_t r = 0; r < std::min(upto + 1, blocks.size()); ++r)
      for (NodeId v : blocks[r])
        if (v >= 0 && v < g_.num_nodes() &&
            label_[v] == static_cast<std::int32_t>(r))
          label_[v] = -1;
  }

  const Graph& g_;
  std::vector<std::int32_t> label_;
};

template <typename Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Scalar>
struct LloydRun {
  std::vector<std::uint8_t> assign;
  RowVec<Scalar> centroid[2];
  double inertia = std::numeric_limits<double>::infinity();
};

template <typename Scalar>
Eigen::VectorXd squared_distances(const EmbeddingMatrix<Scalar>& points,
                                  const RowVec<Scalar>& c) {
  return (points.rowwise() - c).rowwise().squaredNorm().template cast<double>();
}

template <typename Scalar>
std::optional<LloydRun<Scalar>> lloyd_once(const EmbeddingMatrix<Scalar>& points,
                                           const ModelSelectConfig& cfg, Rng& rng) {
  const Index n = points.rows();
  LloydRun<Scalar> run;

  // k-means++ seeding.
  const Index first = static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n)));
  run.centroid[0] = points.row(first);
  const Eigen::VectorXd d2 = squared_distances(points, run.centroid[0]);
  const double total = d2.sum();
  if (!(total > 0.0)) return std::nullopt;
  const double target = rng.uniform() * total;
  Index second = -1;
  double cumulative = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (d2[i] <= 0.0) continue;
    second = i;
    cumulative += d2[i];
    if (cumulative > target) break;
  }
  run.centroid[1] = points.row(second);

  run.assign.assign(n, 0);
  Eigen::VectorXd dist[2];
  auto assign_step = [&] {
    dist[0] = squared_distances(points, run.centroid[0]);
    dist[1] = squared_distances(points, run.centroid[1]);
    Index count1 = 0;
    for (Index i = 0; i < n; ++i) {
      run.assign[i] = dist[1][i] < dist[0][i] ? 1 : 0;
      count1 += run.assign[i];
    }
    return count1;
  };

  for (int iter = 0; iter < cfg.kmeans_max_iters; ++iter) {
    const Index count1 = assign_step();
    if (count1 == 0 || count1 == n) {
      // Re-seed the empty cluster at the point farthest from the other one.
      const int empty = count1 == 0 ? 1 : 0;
      Index far = 0;
      dist[1 - empty].maxCoeff(&far);
      if (!(dist[1 - empty][far] > 0.0)) return std::nullopt;
      run.assign[far] = static_cast<std::uint8_t>(empty);
    }

    RowVec<Scalar> sum[2] = {RowVec<Scalar>::Zero(points.cols()),
                             RowVec<Scalar>::Zero(points.cols())};
    Index count[2] = {0, 0};
    for (Index i = 0; i < n; ++i) {
      sum[run.assign[i]] += points.row(i);
      ++count[run.assign[i]];
    }
    double shift = 0.0;
    for (int c = 0; c < 2; ++c) {
      RowVec<Scalar> updated = sum[c] / static_cast<Scalar>(count[c]);
      shift = std::max(shift,
                       static_cast<double>((updated - run.centroid[c]).norm()));
      run.centroid[c] = std::move(updated);
    }
    if (shift < cfg.kmeans_tol) break;
  }

  // Final assignment against the last centroids; keep the previous one if it
  // would empty a cluster.
  const auto previous = run.assign;
  const Index count1 = assign_step();
  if (count1 == 0 || count1 == n) run.assign = previous;
  run.inertia = 0.0;
  for (Index i = 0; i < n; ++i) run.inertia += dist[run.assign[i]][i];
  return run;
}

template <typename Scalar>
EmbeddingMatrix<Scalar> gather_rows(const EmbeddingMatrix<Scalar>& z,
                                    const std::vector<NodeId>& nodes) {
  EmbeddingMatrix<Scalar> out(static_cast<Index>(nodes.size()), z.cols());
  for (std::size_t i = 0; i < nodes.size(); ++i) out.row(i) = z.row(nodes[i]);
  return out;
}

template <typename Scalar>
HierarchyResult run_hierarchy(const Graph& g, const EmbeddingMatrix<Scalar>& z,
                              const ModelSelectConfig& cfg, bool keep_trace) {
  cfg.validate();
  if (z.rows() != g.num_nodes())
    throw ParameterError("embedding has " + std::to_string(z.rows()) +
                         " rows, graph has " + std::to_string(g.num_nodes()) +
                         " nodes");
  HierarchyResult result;
  const Index n = g.num_nodes();
  if (n == 0) return result;

  LmodWorkspace lmod(g);
  std::vector<BlockId> assignment(n, -1);
  BlockId next_block = 0;
  std::uint64_t kmeans_calls = 0;

  auto emit = [&](const std::vector<NodeId>& nodes) {
    for (NodeId v : nodes) assignment[v] = next_block;
    ++next_block;
  };

  std::vector<std::vector<NodeId>> stack;
  stack.emplace_back(n);
  for (NodeId v = 0; v < n; ++v) stack.back()[v] = v;

  while (!stack.empty()) {
    std::vector<NodeId> nodes = std::move(stack.back());
    stack.pop_back();
    const Index size = static_cast<Index>(nodes.size());
    // Any split of at most 2*epsilon nodes leaves a side <= epsilon.
    if (size < 2 || size <= 2 * cfg.epsilon) {
      emit(nodes);
      continue;
    }
    const std::vector<NodeId>* single = &nodes;
    const auto whole = lmod.evaluate(std::span(single, 1), cfg.normalization);
    if (!(whole.total_degree > 0.0)) {
      emit(nodes);
      continue;
    }

    const auto split = kmeans_two<Scalar>(
        gather_rows(z, nodes), cfg, derive_seed(cfg.seed, "kmeans", kmeans_calls++));
    if (!split) {
      emit(nodes);
      continue;
    }

    SplitCandidate cand;
    cand.lmod_single = whole.value;
    cand.left.reserve(split->left.size());
    cand.right.reserve(split->right.size());
    for (Index i : split->left) cand.left.push_back(nodes[i]);
    for (Index i : split->right) cand.right.push_back(nodes[i]);
    const std::vector<NodeId> sides[2] = {cand.left, cand.right};
    cand.lmod_split = lmod.evaluate(sides, cfg.normalization).value;

    const Index smaller = std::min<Index>(cand.left.size(), cand.right.size());
    cand.accepted =
        smaller > cfg.epsilon && !(cand.lmod_single > cand.lmod_split);
    if (cand.accepted) {
      stack.push_back(cand.right);
      stack.push_back(cand.left);
    } else {
      emit(nodes);
    }
    if (keep_trace) {
      cand.parent = std::move(nodes);
      result.splits.push_back(std::move(cand));
    }
  }
  result.partition = Partition(std::move(assignment), next_block);
  return result;
}

}  // namespace

double local_modularity(const Graph& g,
                        std::span<const std::vector<NodeId>> blocks) {
  return local_modularity(g, blocks, LmodNormalization::Subset);
}

double local_modularity(const Graph& g, std::span<const std::vector<NodeId>> blocks,
                        LmodNormalization normalization) {
  LmodWorkspace ws(g);
  const auto r = ws.evaluate(blocks, normalization);
  if (!(r.total_degree > 0.0))
    throw DegenerateInputError("local modularity of blocks with zero total degree");
  return r.value;
}

template <typename Scalar>
std::optional<TwoWaySplit> kmeans_two(const EmbeddingMatrix<Scalar>& points,
                                      const ModelSelectConfig& cfg,
                                      std::uint64_t stream_seed) {
  cfg.validate();
  if (points.rows() < 2)
    throw ParameterError("k-means needs at least two points, got " +
                         std::to_string(points.rows()));
  Rng rng(stream_seed);
  std::optional<LloydRun<Scalar>> best;
  for (int r = 0; r < cfg.kmeans_restarts; ++r) {
    auto run = lloyd_once(points, cfg, rng);
    if (run && (!best || run->inertia < best->inertia)) best = std::move(run);
  }
  if (!best) return std::nullopt;

  const int left_cluster =
      best->centroid[1].squaredNorm() < best->centroid[0].squaredNorm() ? 1 : 0;
  TwoWaySplit split;
  split.inertia = best->inertia;
  for (Index i = 0; i < points.rows(); ++i)
    (best->assign[i] == left_cluster ? split.left : split.right).push_back(i);
  if (split.left.empty() || split.right.empty()) return std::nullopt;
  return split;
}

template <typename Scalar>
Partition hierarchical_partition(const Graph& g, const EmbeddingMatrix<Scalar>& z,
                                 const ModelSelectConfig& cfg) {
  return run_hierarchy(g, z, cfg, false).partition;
}

template <typename Scalar>
HierarchyResult hierarchical_partition_traced(const Graph& g,
                                              const EmbeddingMatrix<Scalar>& z,
                                              const ModelSelectConfig& cfg) {
  return run_hierarchy(g, z, cfg, true);
}

#define RAFTGP_INSTANTIATE(Scalar)                                              \
  template std::optional<TwoWaySplit> kmeans_two<Scalar>(                       \
      const EmbeddingMatrix<Scalar>&, const ModelSelectConfig&, std::uint64_t); \
  template Partition hierarchical_partition<Scalar>(                            \
      const Graph&, const EmbeddingMatrix<Scalar>&, const ModelSelectConfig&);  \
  template HierarchyResult hierarchical_partition_traced<Scalar>(               \
      const Graph&, const EmbeddingMatrix<Scalar>&, const ModelSelectConfig&);

RAFTGP_INSTANTIATE(float)
RAFTGP_INSTANTIATE(double)
#undef RAFTGP_INSTANTIATE

}  // namespace raftgp
