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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "raftgp/error.hpp"
#include "raftgp/metrics.hpp"
#include "raftgp/model_select.hpp"

using namespace raftgp;

namespace {

Partition part(std::vector<BlockId> a) {
  BlockId k = 0;
  for (BlockId b : a) k = std::max(k, b + 1);
  return Partition(std::move(a), k);
}

std::vector<int> labels(const Partition& p) {
  return {p.assignment().begin(), p.assignment().end()};
}

}  // namespace

TEST_CASE("modularity examples") {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  const Graph g = Graph::from_edges(6, e);
  CHECK(modularity(g, part({0, 0, 0, 0, 0, 0})) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(modularity(g, part({0, 0, 0, 1, 1, 1})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(modularity(Graph::from_edges(3, {}), part({0, 1, 2})), DegenerateInputError);
  CHECK_THROWS_AS(modularity(g, part({0, 1})), ParameterError);
}

TEST_CASE("ari examples") {
  CHECK(adjusted_rand_index(part({0, 0, 1, 2}), part({2, 2, 0, 1})) == 1.0);
  std::vector<BlockId> halves(10, 0);
  for (int i = 5; i < 10; ++i) halves[i] = 1;
  CHECK(adjusted_rand_index(part(std::vector<BlockId>(10, 0)), part(halves)) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(adjusted_rand_index(part({0, 1}), part({0, 1, 1})), ParameterError);
}

TEST_CASE("pairwise precision recall examples") {
  const auto same = pairwise_prf(part({0, 1, 1, 2}), part({1, 0, 0, 2}));
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);

  std::vector<BlockId> halves(10, 0);
  for (int i = 5; i < 10; ++i) halves[i] = 1;
  const auto giant = pairwise_prf(part(std::vector<BlockId>(10, 0)), part(halves));
  CHECK(giant.recall == 1.0);
  CHECK(giant.precision == doctest::Approx(20.0 / 45.0).epsilon(1e-15));

  const auto singles = pairwise_prf(part({0, 1, 2, 3}), part({0, 0, 1, 1}));
  CHECK(singles.precision_undefined);
  CHECK(singles.precision == 1.0);
  CHECK(singles.recall == 0.0);
  CHECK_FALSE(singles.recall_undefined);
}

TEST_CASE("matched accuracy examples") {
  CHECK(matched_accuracy(part({0, 0, 1, 1}), part({1, 1, 0, 0})) == 1.0);
  CHECK(matched_accuracy(part({0, 0, 0, 1}), part({0, 0, 1, 1})) == 0.75);
  // Surplus predicted blocks score nothing.
  CHECK(matched_accuracy(part({0, 1, 2, 3}), part({0, 0, 0, 0})) == 0.25);
}

TEST_CASE("max weight assignment on a rectangular table") {
  Eigen::MatrixXd w(2, 3);
  w << 1, 5, 3, 4, 6, 1;
  const auto match = max_weight_assignment(w);
  CHECK(match == std::vector<Index>{1, 0});
  Eigen::MatrixXd tall(3, 2);
  tall << 1, 0, 0, 2, 3, 0;
  const auto m2 = max_weight_assignment(tall);
  CHECK(m2 == std::vector<Index>{-1, 1, 0});
}

TEST_CASE("metrics match brute-force oracles on random instances") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.bounded(49));
    const int kp = 1 + static_cast<int>(rng.bounded(6));
    const int kt = 1 + static_cast<int>(rng.bounded(6));
    const Partition pred = oracle::to_partition(oracle::random_labels(n, kp, rng));
    const Partition truth = oracle::to_partition(oracle::random_labels(n, kt, rng));
    const auto lp = labels(pred);
    const auto lt = labels(truth);

    const auto pc = oracle::pair_counts(lp, lt);
    const auto prf = pairwise_prf(pred, truth);
    const std::int64_t pred_pairs = pc.both + pc.pred_only;
    const std::int64_t truth_pairs = pc.both + pc.truth_only;
    if (pred_pairs > 0) CHECK(prf.precision == double(pc.both) / double(pred_pairs));
    if (truth_pairs > 0) CHECK(prf.recall == double(pc.both) / double(truth_pairs));

    CHECK(std::abs(adjusted_rand_index(pred, truth) - oracle::ari(lp, lt)) < 1e-12);
    CHECK(matched_accuracy(pred, truth) == oracle::matched_accuracy(lp, lt));

    const Graph g = oracle::random_graph(n, 0.3, rng);
    if (g.num_edges() > 0) {
      CHECK(std::abs(modularity(g, pred) - oracle::modularity(g, lp)) < 1e-12);
      CHECK(std::abs(modularity(g, pred) - local_modularity(g, pred.blocks())) < 1e-12);
    }
  }
}

TEST_CASE("metrics are invariant to relabeling") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto lp = oracle::random_labels(30, 5, rng);
    auto lt = oracle::random_labels(30, 4, rng);
    const Partition pred = oracle::to_partition(lp);
    const Partition truth = oracle::to_partition(lt);
    std::vector<int> shifted = lp;
    for (int& l : shifted) l = 4 - l;
    const Partition pred2 = oracle::to_partition(shifted);
    CHECK(adjusted_rand_index(pred, truth) == doctest::Approx(adjusted_rand_index(pred2, truth)));
    CHECK(matched_accuracy(pred, truth) == matched_accuracy(pred2, truth));
    CHECK(pairwise_prf(pred, truth).f1 == doctest::Approx(pairwise_prf(pred2, truth).f1));
    CHECK(adjusted_rand_index(pred, truth) <= 1.0);
    const double acc = matched_accuracy(truth, truth);
    CHECK(acc == 1.0);
    CHECK(matched_accuracy(pred, truth) >= 1.0 / truth.num_blocks() - 1e-12);
  }
}

TEST_CASE("evaluate bundles all metrics") {
  const std::vector<Edge> e = {{0, 1}, {2, 3}};
  const Graph g = Graph::from_edges(4, e);
  const Metrics m = evaluate(g, part({0, 0, 1, 1}), part({1, 1, 0, 0}));
  CHECK(m.accuracy == 1.0);
  CHECK(m.ari == 1.0);
  CHECK(m.f1 == 1.0);
  CHECK(m.modularity == doctest::Approx(0.5));
  CHECK(m.num_blocks_pred == 2);
  CHECK(m.num_blocks_true == 2);
  const Metrics empty = evaluate(Graph::from_edges(2, {}), part({0, 1}), part({0, 1}));
  CHECK(empty.modularity == 0.0);
}
