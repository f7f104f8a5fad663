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
#include <vector>

#include <Eigen/Core>

#include "raftgp/graph.hpp"

namespace raftgp {

/// Overlap counts between a predicted and a reference partition.
struct ContingencyTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;  // pred x truth
  std::vector<std::int64_t> pred_sizes;
  std::vector<std::int64_t> truth_sizes;
  std::int64_t total = 0;

  /// Throws ParameterError when the partitions cover different node counts.
  static ContingencyTable build(const Partition& pred, const Partition& truth);
};

/// Newman modularity, O(|E| + N). Throws DegenerateInputError for an
/// edgeless graph, ParameterError when p does not cover the graph.
double modularity(const Graph& g, const Partition& p);

double adjusted_rand_index(const Partition& pred, const Partition& truth);

/// Pairwise co-membership precision, recall and F1 over unordered node pairs.
/// A zero denominator (no pairs asserted) yields 1.0 and sets the flag.
struct PairwiseScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
};
PairwiseScores pairwise_prf(const Partition& pred, const Partition& truth);

/// Fraction of nodes whose predicted block is matched to their true block
/// under the overlap-maximizing one-to-one block correspondence.
double matched_accuracy(const Partition& pred, const Partition& truth);

/// Maximum-weight assignment on a rectangular weight matrix (Hungarian
/// method, O(n^3)). Returns, for each row, its matched column or -1.
std::vector<Index> max_weight_assignment(const Eigen::MatrixXd& weights);

/// Everything reported for one prediction.
struct Metrics {
  double accuracy = 0.0;
  double ari = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double modularity = 0.0;
  Index num_blocks_pred = 0;
  Index num_blocks_true = 0;
  double runtime_seconds = 0.0;
};

/// Computes all metrics; modularity is 0 for an edgeless graph.
Metrics evaluate(const Graph& g, const Partition& pred, const Partition& truth);

}  // namespace raftgp
