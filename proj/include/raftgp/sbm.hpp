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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "raftgp/graph.hpp"
#include "raftgp/rng.hpp"
#include "raftgp/types.hpp"

namespace raftgp {

/// Degree-corrected Poisson SBM: A_ij ~ Pois(theta_i theta_j omega(c_i, c_j)).
struct SbmParams {
  std::vector<double> theta;
  std::vector<BlockId> assignment;
  Eigen::MatrixXd omega;

  Index num_nodes() const { return static_cast<Index>(theta.size()); }
  Index num_blocks() const { return omega.rows(); }
  double rate(NodeId i, NodeId j) const {
    return theta[i] * theta[j] * omega(assignment[i], assignment[j]);
  }

  /// Throws ParameterError: theta > 0, omega square symmetric nonnegative,
  /// assignment in range and every block nonempty.
  void validate() const;
};

/// Knobs for a benchmark-style dataset.
struct BenchmarkSpec {
  Index num_nodes = 1000;
  std::uint64_t seed = 0;
  double within_between_ratio = 2.5;
  double size_heterogeneity = 3.0;
  Index num_blocks = 11;
  /// Truncation range and mean of the expected-degree distribution.
  double min_degree = 9.0;
  double max_degree = 112.0;
  double mean_degree = 34.3;

  void validate() const;

  /// Defaults from the nearest published size bracket (log scale):
  ///   N     K   degree range  mean degree
  ///   1e3   11  9..112        34.3
  ///   5e3   19  5..164        38.4
  ///   1e4   25  6..180        39.1
  ///   5e4   44  5..205        40.0
  ///   1e5   56  4..209        40.3
  ///   2e5   71  5..230        40.5
  /// Tiny graphs get the profile clamped to what N nodes can realize.
  static BenchmarkSpec defaults_for(Index num_nodes, std::uint64_t seed);
};

/// Builds SbmParams for a spec:
///  - block sizes: weights 1 and h pinned on two blocks, the rest uniform in
///    [1, h], rounded by largest remainder to sum N; nodes shuffled into blocks;
///  - theta: truncated power law on [min_degree, max_degree] whose exponent is
///    solved so the mean equals mean_degree;
///  - omega: omega_rr = a / Theta_r, omega_rs = b (r != s), Theta_r the
///    block theta sum, with a : b fixed so that expected within-block over
///    between-block edge mass equals the ratio exactly;
///  - an overall scale chosen so the expected number of distinct edges after
///    collapsing multi-edges is N * mean_degree / 2.
SbmParams build_benchmark_params(const BenchmarkSpec& spec);

/// Expected within-block and between-block edge mass, sum of lambda over
/// unordered pairs i < j.
struct EdgeMass {
  double within = 0.0;
  double between = 0.0;
};
EdgeMass expected_edge_mass(const SbmParams& params);

/// Prefix sums of theta over the rows and columns of one block pair's virtual
/// cell table. Since lambda factorizes as omega_rs * theta_i * theta_j, any
/// row-major range of cells sums in O(1) from 1-D prefix differences.
///
/// For a diagonal pair (r == s) the table is the strict upper triangle:
/// row a holds cells (a, b) for b > a.
class BlockPairPrefix {
 public:
  BlockPairPrefix(std::span<const double> row_theta,
                  std::span<const double> col_theta);
  /// Diagonal pair over a single block.
  explicit BlockPairPrefix(std::span<const double> block_theta);

  bool diagonal() const { return diagonal_; }
  Index rows() const { return static_cast<Index>(row_prefix_.size()) - 1; }
  Index cols() const { return static_cast<Index>(col_prefix_.size()) - 1; }
  Index num_cells() const { return num_cells_; }

  /// Row and column (0-based, within the blocks) of 0-based cell c.
  std::pair<Index, Index> cell(Index c) const;

  const std::vector<double>& row_theta_prefix() const { return row_prefix_; }
  const std::vector<double>& col_theta_prefix() const { return col_prefix_; }

 private:
  friend double range_sum(const BlockPairPrefix&, double, Index, Index);

  Index row_start(Index a) const;

  bool diagonal_ = false;
  Index num_cells_ = 0;
  std::vector<double> row_theta_;
  std::vector<double> col_theta_;
  std::vector<double> row_prefix_;
  std::vector<double> col_prefix_;
  // Diagonal only: prefix over rows of theta_a * (sum of theta_b, b > a).
  std::vector<double> tri_row_prefix_;
};

/// Sum of lambda over cells x..y (1-based, inclusive, row-major).
/// Throws ParameterError unless 1 <= x <= y <= num_cells.
double range_sum(const BlockPairPrefix& prefix, double omega_rs, Index x, Index y);

/// Edge with its Poisson multiplicity.
struct WeightedEdge {
  NodeId u;
  NodeId v;
  std::int64_t weight;
};

/// Exact SBM sampling in O((|E| + K^2) log N): per block pair, jump from one
/// nonzero cell to the next by binary search on the prefix sums, then draw the
/// multiplicity from a zero-truncated Poisson. Each pair (r, s), r <= s, uses
/// its own substream derived from (seed, r, s). Returns the multigraph.
std::vector<WeightedEdge> sample_sbm_multigraph(const SbmParams& params,
                                                std::uint64_t seed);

/// sample_sbm_multigraph collapsed to a simple graph.
Graph sample_sbm(const SbmParams& params, std::uint64_t seed);

/// Poisson(lambda) conditioned on being at least 1.
std::int64_t sample_zero_truncated_poisson(double lambda, Rng& rng);

}  // namespace raftgp
