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

#include "raftgp/metrics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "raftgp/error.hpp"

namespace raftgp {
namespace {

double choose2(std::int64_t n) {
  return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

struct PairCounts {
  double both = 0.0;   // pairs together in pred and truth
  double pred = 0.0;   // pairs together in pred
  double truth = 0.0;  // pairs together in truth
  double all = 0.0;
};

PairCounts pair_counts(const ContingencyTable& t) {
  PairCounts c;
  for (Index i = 0; i < t.counts.rows(); ++i)
    for (Index j = 0; j < t.counts.cols(); ++j) c.both += choose2(t.counts(i, j));
  for (auto s : t.pred_sizes) c.pred += choose2(s);
  for (auto s : t.truth_sizes) c.truth += choose2(s);
  c.all = choose2(t.total);
  return c;
}

}  // namespace

ContingencyTable ContingencyTable::build(const Partition& pred,
                                         const Partition& truth) {
  if (pred.size() != truth.size())
    throw ParameterError("partition sizes differ: " + std::to_string(pred.size()) +
                         " vs " + std::to_string(truth.size()));
  ContingencyTable t;
  t.counts.setZero(pred.num_blocks(), truth.num_blocks());
  t.pred_sizes.assign(pred.num_blocks(), 0);
  t.truth_sizes.assign(truth.num_blocks(), 0);
  for (Index v = 0; v < pred.size(); ++v) {
    ++t.counts(pred[v], truth[v]);
    ++t.pred_sizes[pred[v]];
    ++t.truth_sizes[truth[v]];
  }
  t.total = pred.size();
  return t;
}

double modularity(const Graph& g, const Partition& p) {
  if (p.size() != g.num_nodes())
    throw ParameterError("partition covers " + std::to_string(p.size()) +
                         " nodes, graph has " + std::to_string(g.num_nodes()));
  if (g.num_edges() == 0) throw DegenerateInputError("modularity of an edgeless graph");
  std::vector<std::int64_t> intra_ends(p.num_blocks(), 0);
  std::vector<std::int64_t> degree_sum(p.num_blocks(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const BlockId b = p[v];
    degree_sum[b] += g.degree(v);
    for (NodeId u : g.neighbors(v)) intra_ends[b] += (p[u] == b);
  }
  const double e = static_cast<double>(g.num_edges());
  double q = 0.0;
  for (BlockId b = 0; b < p.num_blocks(); ++b) {
    const double frac = static_cast<double>(degree_sum[b]) / (2.0 * e);
    q += static_cast<double>(intra_ends[b] / 2) / e - frac * frac;
  }
  return q;
}

double adjusted_rand_index(const Partition& pred, const Partition& truth) {
  const auto c = pair_counts(ContingencyTable::build(pred, truth));
  if (c.all == 0.0) return 1.0;
  const double expected = c.pred * c.truth / c.all;
  const double max_index = 0.5 * (c.pred + c.truth);
  // Only reachable when both partitions are all-one-block or all-singletons.
  if (max_index == expected) return 1.0;
  return (c.both - expected) / (max_index - expected);
}

PairwiseScores pairwise_prf(const Partition& pred, const Partition& truth) {
  const auto c = pair_counts(ContingencyTable::build(pred, truth));
  PairwiseScores s;
  s.precision_undefined = c.pred == 0.0;
  s.recall_undefined = c.truth == 0.0;
  s.precision = s.precision_undefined ? 1.0 : c.both / c.pred;
  s.recall = s.recall_undefined ? 1.0 : c.both / c.truth;
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

std::vector<Index> max_weight_assignment(const Eigen::MatrixXd& weights) {
  const Index rows = weights.rows();
  const Index cols = weights.cols();
  const Index n = std::max(rows, cols);
  if (n == 0) return {};
  const double top = rows && cols ? weights.maxCoeff() : 0.0;
  // Square cost matrix, 1-based, padding cells cost `top` (weight 0).
  auto cost = [&](Index i, Index j) {
    return (i <= rows && j <= cols) ? top - weights(i - 1, j - 1) : top;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);  // match[col] = row
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = match[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<Index> result(rows, -1);
  for (Index j = 1; j <= n; ++j)
    if (match[j] >= 1 && match[j] <= rows && j <= cols) result[match[j] - 1] = j - 1;
  return result;
}

double matched_accuracy(const Partition& pred, const Partition& truth) {
  const auto t = ContingencyTable::build(pred, truth);
  if (t.total == 0) return 1.0;
  const Eigen::MatrixXd w = t.counts.cast<double>();
  const auto assignment = max_weight_assignment(w);
  std::int64_t matched = 0;
  for (Index i = 0; i < static_cast<Index>(assignment.size()); ++i)
    if (assignment[i] >= 0) matched += t.counts(i, assignment[i]);
  return static_cast<double>(matched) / static_cast<double>(t.total);
}

Metrics evaluate(const Graph& g, const Partition& pred, const Partition& truth) {
  Metrics m;
  m.accuracy = matched_accuracy(pred, truth);
  m.ari = adjusted_rand_index(pred, truth);
  const auto prf = pairwise_prf(pred, truth);
  m.precision = prf.precision;
  m.recall = prf.recall;
  m.f1 = prf.f1;
  m.modularity = g.num_edges() > 0 ? modularity(g, pred) : 0.0;
  m.num_blocks_pred = pred.num_blocks();
  m.num_blocks_true = truth.num_blocks();
  return m;
}

}  // namespace raftgp
