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

#include "raftgp/features.hpp"

#include <cmath>

#include "raftgp/error.hpp"
#include "raftgp/parallel.hpp"
#include "raftgp/rng.hpp"
#include "sparse_util.hpp"

namespace raftgp {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::NormalizedAdjacency:
      return "normalized-adjacency";
    case FeatureKind::ReducedModularity:
      return "reduced-modularity";
  }
  return "unknown";
}

template <typename Scalar>
SparseMatrix<Scalar> normalized_adjacency(const Graph& g) {
  const auto deg = g.degrees();
  return detail::on_adjacency_pattern<Scalar>(g, false, [&](NodeId i, NodeId j) {
    return static_cast<Scalar>(
        1.0 / std::sqrt(static_cast<double>(deg[i]) * static_cast<double>(deg[j])));
  });
}

template <typename Scalar>
SparseMatrix<Scalar> reduced_modularity(const Graph& g) {
  if (g.num_edges() == 0)
    throw DegenerateInputError("reduced modularity of an edgeless graph");
  const auto deg = g.degrees();
  const double two_e = 2.0 * static_cast<double>(g.num_edges());
  return detail::on_adjacency_pattern<Scalar>(g, false, [&](NodeId i, NodeId j) {
    return static_cast<Scalar>(
        1.0 - static_cast<double>(deg[i]) * static_cast<double>(deg[j]) / two_e);
  });
}

template <typename Scalar>
SparseMatrix<Scalar> feature_matrix(const Graph& g, FeatureKind kind) {
  return kind == FeatureKind::NormalizedAdjacency ? normalized_adjacency<Scalar>(g)
                                                  : reduced_modularity<Scalar>(g);
}

template <typename Scalar>
EmbeddingMatrix<Scalar> gaussian_projection(const SparseMatrix<Scalar>& x,
                                            Index target_dim, std::uint64_t seed) {
  if (target_dim <= 0)
    throw ParameterError("projection dimension must be positive, got " +
                         std::to_string(target_dim));
  EmbeddingMatrix<Scalar> theta(x.cols(), target_dim);
  Rng rng(seed);
  rng.fill_normal(theta, 1.0 / std::sqrt(static_cast<double>(target_dim)));

  EmbeddingMatrix<Scalar> y(x.rows(), target_dim);
  parallel_chunks(x.rows(), 256, [&](Index begin, Index end) {
    detail::sparse_dense_rows(x, theta, y, begin, end);
  });
  return y;
}

#define RAFTGP_INSTANTIATE(Scalar)                                              \
  template SparseMatrix<Scalar> normalized_adjacency<Scalar>(const Graph&);     \
  template SparseMatrix<Scalar> reduced_modularity<Scalar>(const Graph&);       \
  template SparseMatrix<Scalar> feature_matrix<Scalar>(const Graph&,            \
                                                       FeatureKind);            \
  template EmbeddingMatrix<Scalar> gaussian_projection<Scalar>(                 \
      const SparseMatrix<Scalar>&, Index, std::uint64_t);

RAFTGP_INSTANTIATE(float)
RAFTGP_INSTANTIATE(double)
#undef RAFTGP_INSTANTIATE

}  // namespace raftgp
