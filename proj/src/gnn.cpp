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

#include "raftgp/gnn.hpp"

#include <cmath>
#include <string>

#include "raftgp/error.hpp"
#include "raftgp/parallel.hpp"
#include "raftgp/rng.hpp"
#include "sparse_util.hpp"

namespace raftgp {
namespace {

constexpr Index kRowChunk = 256;

// out = tanh(P * h), row-normalized. h is the already-transformed N x L_k
// block Z W^(k).
template <typename Scalar>
EmbeddingMatrix<Scalar> aggregate(const SparseMatrix<Scalar>& p,
                                  const EmbeddingMatrix<Scalar>& h) {
  EmbeddingMatrix<Scalar> out(h.rows(), h.cols());
  parallel_chunks(h.rows(), kRowChunk, [&](Index begin, Index end) {
    detail::sparse_dense_rows(p, h, out, begin, end);
    auto rows = out.middleRows(begin, end - begin);
    rows = rows.array().tanh().matrix();
    for (Index i = 0; i < rows.rows(); ++i) {
      const Scalar norm = rows.row(i).norm();
      if (norm > Scalar(0)) rows.row(i) /= norm;
    }
  });
  return out;
}

// Dense Z W with a fixed row blocking so each row's result is independent of
// the worker count.
template <typename Scalar>
EmbeddingMatrix<Scalar> dense_times(const EmbeddingMatrix<Scalar>& z,
                                    const EmbeddingMatrix<Scalar>& w) {
  EmbeddingMatrix<Scalar> out(z.rows(), w.cols());
  parallel_chunks(z.rows(), kRowChunk, [&](Index begin, Index end) {
    out.middleRows(begin, end - begin).noalias() =
        z.middleRows(begin, end - begin) * w;
  });
  return out;
}

template <typename Scalar>
EmbeddingMatrix<Scalar> sparse_times(const SparseMatrix<Scalar>& x,
                                     const EmbeddingMatrix<Scalar>& w) {
  EmbeddingMatrix<Scalar> out(x.rows(), w.cols());
  parallel_chunks(x.rows(), kRowChunk, [&](Index begin, Index end) {
    detail::sparse_dense_rows(x, w, out, begin, end);
  });
  return out;
}

template <typename Scalar>
void check_input(const Graph& g, Index rows, Index cols, const LayerConfig& cfg) {
  cfg.validate();
  if (rows != g.num_nodes())
    throw ParameterError("input has " + std::to_string(rows) + " rows, graph has " +
                         std::to_string(g.num_nodes()) + " nodes");
  if (cols != cfg.dims.front())
    throw ParameterError("input width " + std::to_string(cols) +
                         " does not match first layer width " +
                         std::to_string(cfg.dims.front()));
}

}  // namespace

void LayerConfig::validate() const {
  if (dims.size() < 2)
    throw ParameterError("layer configuration needs at least two widths");
  for (Index d : dims)
    if (d < 1) throw ParameterError("layer widths must be >= 1");
}

std::vector<Index> default_layer_dims(Index num_nodes) {
  // Geometric midpoints between the 1e3, 5e3 and 1e4 brackets.
  const double n = static_cast<double>(std::max<Index>(1, num_nodes));
  if (n < std::sqrt(1e3 * 5e3)) return {256, 128, 64};
  if (n < std::sqrt(5e3 * 1e4)) return {1024, 512, 256, 128};
  return {4096, 2048, 1024, 512, 256};
}

template <typename Scalar>
GnnWeights<Scalar> GnnWeights<Scalar>::random(const LayerConfig& cfg) {
  cfg.validate();
  GnnWeights w;
  for (std::size_t k = 1; k < cfg.dims.size(); ++k) {
    EmbeddingMatrix<Scalar> m(cfg.dims[k - 1], cfg.dims[k]);
    Rng rng = Rng::substream(cfg.seed, "gcn-layer", k);
    rng.fill_normal(m, 1.0 / std::sqrt(static_cast<double>(cfg.dims[k])));
    w.matrices.push_back(std::move(m));
  }
  return w;
}

template <typename Scalar>
SparseMatrix<Scalar> propagation_matrix(const Graph& g) {
  const auto deg = g.degrees();
  return detail::on_adjacency_pattern<Scalar>(g, true, [&](NodeId i, NodeId j) {
    return static_cast<Scalar>(1.0 / std::sqrt(static_cast<double>(deg[i] + 1) *
                                               static_cast<double>(deg[j] + 1)));
  });
}

template <typename Scalar>
void normalize_rows(EmbeddingMatrix<Scalar>& z) {
  for (Index i = 0; i < z.rows(); ++i) {
    const Scalar norm = z.row(i).norm();
    if (norm > Scalar(0)) z.row(i) /= norm;
  }
}

template <typename Scalar>
EmbeddingMatrix<Scalar> forward(const Graph& g, const EmbeddingMatrix<Scalar>& y,
                                const LayerConfig& cfg) {
  check_input<Scalar>(g, y.rows(), y.cols(), cfg);
  const auto p = propagation_matrix<Scalar>(g);
  const auto weights = GnnWeights<Scalar>::random(cfg);
  EmbeddingMatrix<Scalar> z = aggregate(p, dense_times(y, weights.matrices[0]));
  for (std::size_t k = 1; k < weights.matrices.size(); ++k)
    z = aggregate(p, dense_times(z, weights.matrices[k]));
  return z;
}

template <typename Scalar>
EmbeddingMatrix<Scalar> forward(const Graph& g, const SparseMatrix<Scalar>& x,
                                const LayerConfig& cfg) {
  check_input<Scalar>(g, x.rows(), x.cols(), cfg);
  const auto p = propagation_matrix<Scalar>(g);
  const auto weights = GnnWeights<Scalar>::random(cfg);
  EmbeddingMatrix<Scalar> z = aggregate(p, sparse_times(x, weights.matrices[0]));
  for (std::size_t k = 1; k < weights.matrices.size(); ++k)
    z = aggregate(p, dense_times(z, weights.matrices[k]));
  return z;
}

#define RAFTGP_INSTANTIATE(Scalar)                                             \
  template struct GnnWeights<Scalar>;                                          \
  template SparseMatrix<Scalar> propagation_matrix<Scalar>(const Graph&);      \
  template void normalize_rows<Scalar>(EmbeddingMatrix<Scalar>&);              \
  template EmbeddingMatrix<Scalar> forward<Scalar>(                            \
      const Graph&, const EmbeddingMatrix<Scalar>&, const LayerConfig&);       \
  template EmbeddingMatrix<Scalar> forward<Scalar>(                            \
      const Graph&, const SparseMatrix<Scalar>&, const LayerConfig&);

RAFTGP_INSTANTIATE(float)
RAFTGP_INSTANTIATE(double)
#undef RAFTGP_INSTANTIATE

}  // namespace raftgp
