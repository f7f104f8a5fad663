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

#include "raftgp/graph.hpp"
#include "raftgp/types.hpp"

namespace raftgp {

/// Widths [L, L_1, ..., d]: dims[0] is the input feature width, each further
/// entry adds one GCN layer with tanh activation.
struct LayerConfig {
  std::vector<Index> dims;
  std::uint64_t seed = 0;

  /// Throws ParameterError unless dims has at least two entries, all >= 1.
  void validate() const;
};

/// Default widths keyed by the nearest benchmark size (log scale):
/// 1e3 -> [256,128,64], 5e3 -> [1024,512,256,128],
/// 1e4 and above -> [4096,2048,1024,512,256].
std::vector<Index> default_layer_dims(Index num_nodes);

/// Frozen random weights; W^(k) is dims[k-1] x dims[k] with entries
/// N(0, dims[k]^-1/2), layer k drawn from substream (seed, "gcn-layer", k).
template <typename Scalar = double>
struct GnnWeights {
  std::vector<EmbeddingMatrix<Scalar>> matrices;

  static GnnWeights random(const LayerConfig& cfg);
};

/// D^-1/2 (A + I) D^-1/2 where D is the degree matrix of A + I.
template <typename Scalar = double>
SparseMatrix<Scalar> propagation_matrix(const Graph& g);

/// Scales each row to unit l2 norm; all-zero rows stay zero.
template <typename Scalar>
void normalize_rows(EmbeddingMatrix<Scalar>& z);

/// One untrained feedforward pass: for each layer
///   Z <- normalize_rows(tanh(P Z W^(k))).
/// y must be N x cfg.dims[0].
template <typename Scalar = double>
EmbeddingMatrix<Scalar> forward(const Graph& g, const EmbeddingMatrix<Scalar>& y,
                                const LayerConfig& cfg);

/// Same pass with a sparse input (the projection-free ablation); x must be
/// N x cfg.dims[0]. The first layer is evaluated as P (X W^(1)).
template <typename Scalar = double>
EmbeddingMatrix<Scalar> forward(const Graph& g, const SparseMatrix<Scalar>& x,
                                const LayerConfig& cfg);

}  // namespace raftgp
