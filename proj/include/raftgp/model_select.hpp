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
#include <vector>

#include "raftgp/graph.hpp"
#include "raftgp/types.hpp"

namespace raftgp {

/// Edge count that normalizes local modularity.
enum class LmodNormalization {
  Subset,  // e = half the total degree of U
  Graph,   // e = |E| of the whole graph
};

struct ModelSelectConfig {
  /// A split is rejected when either side has at most this many nodes.
  Index epsilon = 5;
  int kmeans_max_iters = 50;
  double kmeans_tol = 1e-6;
  int kmeans_restarts = 4;
  std::uint64_t seed = 0;
  LmodNormalization normalization = LmodNormalization::Graph;

  void validate() const;
};

/// Local modularity of blocks partitioning U, a subset of V:
///   sum_r [ m_r / e - (dbar_r / 2e)^2 ],
/// where m_r counts edges inside block r, dbar_r sums full-graph degrees of
/// the block, and 2e = sum_r dbar_r. Throws DegenerateInputError when the
/// blocks carry no degree at all, ParameterError on overlapping blocks.
double local_modularity(const Graph& g,
                        std::span<const std::vector<NodeId>> blocks);

/// Same sum with a chosen normalization. With LmodNormalization::Graph the
/// value is each block's contribution to Newman modularity, so comparing a
/// block against its split measures the change in global modularity.
double local_modularity(const Graph& g, std::span<const std::vector<NodeId>> blocks,
                        LmodNormalization normalization);

/// Output of a two-way k-means. Indices refer to rows of the input points.
struct TwoWaySplit {
  std::vector<Index> left;   // cluster whose centroid has the smaller norm
  std::vector<Index> right;
  double inertia = 0.0;      // within-cluster sum of squares
};

/// Lloyd's algorithm with k-means++ seeding and K = 2; keeps the restart with
/// the lowest inertia. Returns nullopt when no restart yields two nonempty
/// clusters (all points identical). Throws ParameterError for fewer than two
/// points.
template <typename Scalar = double>
std::optional<TwoWaySplit> kmeans_two(const EmbeddingMatrix<Scalar>& points,
                                      const ModelSelectConfig& cfg,
                                      std::uint64_t stream_seed);

/// One evaluated split of a node subset.
struct SplitCandidate {
  std::vector<NodeId> parent;
  std::vector<NodeId> left;
  std::vector<NodeId> right;
  double lmod_single = 0.0;
  double lmod_split = 0.0;
  bool accepted = false;
};

struct HierarchyResult {
  Partition partition;
  std::vector<SplitCandidate> splits;  // every candidate evaluated, DFS order
};

/// Recursive bisection with the local-modularity stopping rule. Starting from
/// U = V: split U by kmeans_two on its embedding rows; keep U as a block when
/// min(|U1|, |U2|) <= epsilon, LMod(U) > LMod(U1, U2), or the split is
/// degenerate; otherwise recurse depth-first on the smaller-centroid-norm
/// side first. Block ids follow emission order.
template <typename Scalar = double>
Partition hierarchical_partition(const Graph& g, const EmbeddingMatrix<Scalar>& z,
                                 const ModelSelectConfig& cfg);

template <typename Scalar = double>
HierarchyResult hierarchical_partition_traced(const Graph& g,
                                              const EmbeddingMatrix<Scalar>& z,
                                              const ModelSelectConfig& cfg);

}  // namespace raftgp
