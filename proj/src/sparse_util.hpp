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

#include <algorithm>

#include "raftgp/graph.hpp"
#include "raftgp/types.hpp"

namespace raftgp::detail {

// Fills a CSR matrix on A's pattern (optionally plus the diagonal) with
// value(i, j). Writes Eigen's compressed buffers directly.
template <typename Scalar, typename ValueFn>
SparseMatrix<Scalar> on_adjacency_pattern(const Graph& g, bool with_diagonal,
                                          ValueFn&& value) {
  const Index n = g.num_nodes();
  const Index nnz = 2 * g.num_edges() + (with_diagonal ? n : 0);
  SparseMatrix<Scalar> m(n, n);
  m.resizeNonZeros(nnz);
  auto* outer = m.outerIndexPtr();
  auto* inner = m.innerIndexPtr();
  auto* values = m.valuePtr();
  Index k = 0;
  outer[0] = 0;
  for (NodeId i = 0; i < n; ++i) {
    bool diagonal_done = !with_diagonal;
    for (NodeId j : g.neighbors(i)) {
      if (!diagonal_done && j > i) {
        inner[k] = i;
        values[k++] = value(i, i);
        diagonal_done = true;
      }
      inner[k] = j;
      values[k++] = value(i, j);
    }
    if (!diagonal_done) {
      inner[k] = i;
      values[k++] = value(i, i);
    }
    outer[i + 1] = static_cast<int>(k);
  }
  return m;
}

// Row block [begin, end) of a row-major sparse matrix times a dense matrix,
// written into out.middleRows(begin, end - begin). Each output row is the
// sequential sum of its nonzeros in column order.
template <typename Scalar>
void sparse_dense_rows(const SparseMatrix<Scalar>& a,
                       const EmbeddingMatrix<Scalar>& b,
                       EmbeddingMatrix<Scalar>& out, Index begin, Index end) {
  for (Index i = begin; i < end; ++i) {
    auto row = out.row(i);
    row.setZero();
    for (typename SparseMatrix<Scalar>::InnerIterator it(a, i); it; ++it)
      row.noalias() += it.value() * b.row(it.col());
  }
}

}  // namespace raftgp::detail
