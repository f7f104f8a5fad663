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
#include <string_view>

#include "raftgp/graph.hpp"
#include "raftgp/types.hpp"

namespace raftgp {

/// Which objective-derived statistic to project.
enum class FeatureKind {
  NormalizedAdjacency,  // D^-1/2 A D^-1/2, the cut-based variant
  ReducedModularity,    // modularity matrix restricted to edges
};

std::string_view to_string(FeatureKind kind);

/// M_ij = 1 / sqrt(deg(i) deg(j)) on edges. Rows of isolated nodes are empty.
template <typename Scalar = double>
SparseMatrix<Scalar> normalized_adjacency(const Graph& g);

/// Q~_ij = 1 - deg(i) deg(j) / (2e) on edges, zero elsewhere.
/// Throws DegenerateInputError for an edgeless graph.
template <typename Scalar = double>
SparseMatrix<Scalar> reduced_modularity(const Graph& g);

template <typename Scalar = double>
SparseMatrix<Scalar> feature_matrix(const Graph& g, FeatureKind kind);

/// Gaussian random projection Y = X Theta.
///
/// Theta is N x target_dim with i.i.d. entries of mean 0 and standard
/// deviation target_dim^-1/2, drawn row-major from Rng(seed). The product is
/// a sparse-dense multiply in O(nnz(X) * target_dim); each output row is a
/// sequential sum over its nonzeros, so results are independent of the
/// worker count.
template <typename Scalar = double>
EmbeddingMatrix<Scalar> gaussian_projection(const SparseMatrix<Scalar>& x,
                                            Index target_dim, std::uint64_t seed);

}  // namespace raftgp
