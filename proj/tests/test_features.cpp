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
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "raftgp/error.hpp"
#include "raftgp/features.hpp"

using namespace raftgp;

namespace {

Graph star3() {
  const std::vector<Edge> e = {{0, 1}, {0, 2}, {0, 3}};
  return Graph::from_edges(4, e);
}

Graph triangle() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}};
  return Graph::from_edges(3, e);
}

Graph single_edge() {
  const std::vector<Edge> e = {{0, 1}};
  return Graph::from_edges(2, e);
}

SparseMatrix<double> random_sparse(Index n, double density, Rng& rng) {
  std::vector<Eigen::Triplet<double, int>> t;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (rng.uniform() < density)
        t.emplace_back(static_cast<int>(i), static_cast<int>(j), rng.normal());
  SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

void check_pattern_matches_adjacency(const Graph& g, const SparseMatrix<double>& m) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(m);
  const Eigen::MatrixXd a = oracle::dense_adjacency(g);
  CHECK(m.nonZeros() == 2 * g.num_edges());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) CHECK(dense(i, j) == 0.0);
      CHECK(dense(i, j) == dense(j, i));
    }
}

}  // namespace

TEST_CASE("normalized adjacency examples") {
  const auto m1 = Eigen::MatrixXd(normalized_adjacency(single_edge()));
  CHECK(m1(0, 1) == 1.0);
  CHECK(m1(1, 0) == 1.0);

  const auto m3 = Eigen::MatrixXd(normalized_adjacency(triangle()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m3(i, j) == (i == j ? 0.0 : 0.5));

  const auto ms = Eigen::MatrixXd(normalized_adjacency(star3()));
  for (int leaf = 1; leaf <= 3; ++leaf) {
    CHECK(ms(0, leaf) == doctest::Approx(0.5773502691896258).epsilon(1e-15));
    CHECK(ms(leaf, 0) == ms(0, leaf));
  }
}

TEST_CASE("reduced modularity examples") {
  const auto q3 = Eigen::MatrixXd(reduced_modularity(triangle()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(q3(i, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto q1 = Eigen::MatrixXd(reduced_modularity(single_edge()));
  CHECK(q1(0, 1) == 0.5);
  CHECK(q1(1, 0) == 0.5);
  CHECK_THROWS_AS(reduced_modularity(Graph::from_edges(3, {})), DegenerateInputError);
}

TEST_CASE("feature matrices share the adjacency pattern and are symmetric") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(25, 0.2, rng);
    if (g.num_edges() == 0) continue;
    check_pattern_matches_adjacency(g, normalized_adjacency(g));
    check_pattern_matches_adjacency(g, reduced_modularity(g));
    // Independent evaluation of both formulas.
    const Eigen::MatrixXd m = Eigen::MatrixXd(normalized_adjacency(g));
    const Eigen::MatrixXd q = Eigen::MatrixXd(reduced_modularity(g));
    const auto d = g.degrees();
    const double two_e = 2.0 * static_cast<double>(g.num_edges());
    for (const auto& [i, j] : g.edges()) {
      CHECK(m(i, j) == doctest::Approx(1.0 / std::sqrt(double(d[i] * d[j]))).epsilon(1e-15));
      CHECK(q(i, j) == doctest::Approx(1.0 - double(d[i] * d[j]) / two_e).epsilon(1e-14));
    }
  }
}

TEST_CASE("isolated nodes give empty rows") {
  const std::vector<Edge> e = {{0, 1}};
  const Graph g = Graph::from_edges(4, e);
  const auto m = Eigen::MatrixXd(normalized_adjacency(g));
  CHECK(m.row(3).squaredNorm() == 0.0);
  const auto y = gaussian_projection(normalized_adjacency(g), 8, 1);
  CHECK(y.row(2).squaredNorm() == 0.0);
  CHECK(y.row(3).squaredNorm() == 0.0);
}

TEST_CASE("gaussian projection basic contracts") {
  SparseMatrix<double> zero(10, 10);
  CHECK(gaussian_projection(zero, 6, 42).isZero(0.0));
  CHECK_THROWS_AS(gaussian_projection(zero, 0, 1), ParameterError);
  CHECK_THROWS_AS(gaussian_projection(zero, -3, 1), ParameterError);

  // Identical rows project identically.
  std::vector<Eigen::Triplet<double, int>> t = {{0, 1, 2.0}, {0, 4, -1.0},
                                               {3, 1, 2.0}, {3, 4, -1.0}, {2, 2, 1.0}};
  SparseMatrix<double> x(5, 5);
  x.setFromTriplets(t.begin(), t.end());
  const auto y = gaussian_projection(x, 16, 9);
  CHECK(y.row(0) == y.row(3));
}

TEST_CASE("gaussian projection entries have the chosen scale") {
  // Identity input exposes Theta itself.
  const Index n = 400, l = 50;
  SparseMatrix<double> eye(n, n);
  eye.setIdentity();
  const auto theta = gaussian_projection(eye, l, 17);
  const double mean = theta.mean();
  const double var = (theta.array() - mean).square().sum() / double(n * l - 1);
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0 / double(l)).epsilon(0.03));
}

TEST_CASE("gaussian projection is linear") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x1 = random_sparse(30, 0.2, rng);
    const auto x2 = random_sparse(30, 0.2, rng);
    const double a = rng.normal(), b = rng.normal();
    const SparseMatrix<double> combo = a * x1 + b * x2;
    const auto lhs = gaussian_projection(combo, 12, 99);
    const Eigen::MatrixXd rhs = a * gaussian_projection(x1, 12, 99) +
                                b * gaussian_projection(x2, 12, 99);
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
  }
}

TEST_CASE("gaussian projection is deterministic across thread counts") {
  Rng rng(21);
  const auto x = random_sparse(3000, 0.003, rng);
  ::setenv("RAFTGP_THREADS", "1", 1);
  const auto y1 = gaussian_projection(x, 40, 5);
  ::setenv("RAFTGP_THREADS", "4", 1);
  const auto y4 = gaussian_projection(x, 40, 5);
  ::unsetenv("RAFTGP_THREADS");
  const auto y_again = gaussian_projection(x, 40, 5);
  CHECK(y1 == y4);
  CHECK(y1 == y_again);
  CHECK(gaussian_projection(x, 40, 6) != y1);
}

TEST_CASE("gaussian projection roughly preserves distances") {
  Rng rng(2024);
  const Index n = 64, l = 32;
  const auto x = random_sparse(n, 0.3, rng);
  const Eigen::MatrixXd dense(x);
  const auto y = gaussian_projection(x, l, 77);
  int within = 0;
  const int pairs = 100;
  for (int k = 0; k < pairs; ++k) {
    const Index i = static_cast<Index>(rng.bounded(n));
    Index j = static_cast<Index>(rng.bounded(n - 1));
    if (j >= i) ++j;
    const double ratio = (y.row(i) - y.row(j)).norm() / (dense.row(i) - dense.row(j)).norm();
    within += ratio >= 0.5 && ratio <= 1.5;
  }
  CHECK(within >= 95);
}
