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
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "raftgp/types.hpp"

namespace raftgp {

using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected unweighted graph in CSR form.
///
/// Invariants: neighbor lists are sorted, symmetric, free of self-loops and
/// duplicates. Immutable after construction.
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Builds a graph from an arbitrary edge list. Edges are symmetrized,
  /// self-loops and duplicates are dropped. Throws BoundsError if an
  /// endpoint is outside [0, num_nodes).
  static Graph from_edges(Index num_nodes, std::span<const Edge> edges);

  Index num_nodes() const { return static_cast<Index>(offsets_.size()) - 1; }
  Index num_edges() const { return static_cast<Index>(neighbors_.size()) / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }
  Index degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& neighbor_array() const { return neighbors_; }
  std::vector<Index> degrees() const;

  /// Each undirected edge once, as (i, j) with i < j, in CSR order.
  std::vector<Edge> edges() const;

  bool has_edge(NodeId i, NodeId j) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Block assignment. Every id in [0, num_blocks) is used by at least one node.
class Partition {
 public:
  Partition() = default;
  /// Throws ParameterError when an id is out of range or a block is empty.
  Partition(std::vector<BlockId> assignment, BlockId num_blocks);

  /// Compacts arbitrary integer labels to dense ids in ascending label order.
  /// Labels that are already dense come back unchanged.
  static Partition from_labels(std::span<const std::int64_t> labels);

  Index size() const { return static_cast<Index>(assignment_.size()); }
  BlockId num_blocks() const { return num_blocks_; }
  BlockId operator[](Index v) const { return assignment_[v]; }
  const std::vector<BlockId>& assignment() const { return assignment_; }

  /// Members of each block, ascending node ids.
  std::vector<std::vector<NodeId>> blocks() const;
  std::vector<Index> block_sizes() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<BlockId> assignment_;
  BlockId num_blocks_ = 0;
};

// Edge list text format: one "u v" pair per line, 0-based ids. An optional
// "# N <n>" header declares the node count; other lines starting with '#'
// and blank lines are ignored.
Graph load_edge_list(const std::filesystem::path& path);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

// Partition text format: one "node_id block_id" line per node.
Partition load_partition(const std::filesystem::path& path);
void save_partition(const Partition& p, const std::filesystem::path& path);

}  // namespace raftgp
