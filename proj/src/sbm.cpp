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

#include "raftgp/sbm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "raftgp/error.hpp"

namespace raftgp {

void SbmParams::validate() const {
  const Index n = num_nodes();
  const Index k = num_blocks();
  if (static_cast<Index>(assignment.size()) != n)
    throw ParameterError("theta and assignment lengths differ");
  if (omega.rows() != omega.cols()) throw ParameterError("omega must be square");
  for (double t : theta)
    if (!(t > 0.0) || !std::isfinite(t))
      throw ParameterError("theta entries must be positive and finite");
  for (Index r = 0; r < k; ++r)
    for (Index s = 0; s < k; ++s) {
      if (!(omega(r, s) >= 0.0) || !std::isfinite(omega(r, s)))
        throw ParameterError("omega entries must be nonnegative and finite");
      if (omega(r, s) != omega(s, r)) throw ParameterError("omega must be symmetric");
    }
  std::vector<char> used(k, 0);
  for (BlockId b : assignment) {
    if (b < 0 || b >= k) throw ParameterError("block id out of range");
    used[b] = 1;
  }
  for (Index r = 0; r < k; ++r)
    if (!used[r]) throw ParameterError("block " + std::to_string(r) + " is empty");
}

void BenchmarkSpec::validate() const {
  if (num_nodes < 1) throw ParameterError("need at least one node");
  if (num_blocks < 1 || num_blocks > num_nodes)
    throw ParameterError("block count must be in [1, N]");
  if (!(within_between_ratio > 0.0))
    throw ParameterError("within/between ratio must be positive");
  if (!(size_heterogeneity >= 1.0))
    throw ParameterError("size heterogeneity must be >= 1");
  if (!(min_degree > 0.0)) throw ParameterError("min degree must be positive");
  if (min_degree > max_degree)
    throw ParameterError("min degree exceeds max degree");
  if (min_degree > static_cast<double>(num_nodes - 1))
    throw ParameterError("min degree " + std::to_string(min_degree) +
                         " exceeds the largest possible degree N-1 = " +
                         std::to_string(num_nodes - 1));
  if (mean_degree < min_degree || mean_degree > max_degree ||
      (min_degree < max_degree &&
       (mean_degree == min_degree || mean_degree == max_degree)))
    throw ParameterError("mean degree must lie strictly inside [min, max]");
}

BenchmarkSpec BenchmarkSpec::defaults_for(Index num_nodes, std::uint64_t seed) {
  struct Bracket {
    double n;
    Index k;
    double lo, hi, mean;
  };
  static constexpr std::array<Bracket, 6> kBrackets{{
      {1e3, 11, 9, 112, 34.3},
      {5e3, 19, 5, 164, 38.4},
      {1e4, 25, 6, 180, 39.1},
      {5e4, 44, 5, 205, 40.0},
      {1e5, 56, 4, 209, 40.3},
      {2e5, 71, 5, 230, 40.5},
  }};
  const double logn = std::log(static_cast<double>(std::max<Index>(1, num_nodes)));
  const Bracket* best = &kBrackets[0];
  for (const auto& b : kBrackets)
    if (std::abs(std::log(b.n) - logn) < std::abs(std::log(best->n) - logn))
      best = &b;

  BenchmarkSpec spec;
  spec.num_nodes = num_nodes;
  spec.seed = seed;
  const double n1 = static_cast<double>(std::max<Index>(1, num_nodes - 1));
  spec.num_blocks = std::max<Index>(1, std::min<Index>(best->k, num_nodes / 5));
  spec.mean_degree = std::min(best->mean, n1 / 3.0);
  spec.max_degree = std::min(best->hi, n1);
  spec.min_degree = std::min(best->lo, spec.mean_degree / 2.0);
  return spec;
}

namespace {

// Integral of x^s over [lo, hi].
double power_integral(double s, double lo, double hi) {
  if (std::abs(s + 1.0) < 1e-12) return std::log(hi / lo);
  return (std::pow(hi, s + 1.0) - std::pow(lo, s + 1.0)) / (s + 1.0);
}

double truncated_power_mean(double alpha, double lo, double hi) {
  return power_integral(1.0 - alpha, lo, hi) / power_integral(-alpha, lo, hi);
}

// Density proportional to x^-alpha on [lo, hi], by inverse CDF.
double sample_truncated_power(double alpha, double lo, double hi, double u) {
  if (std::abs(alpha - 1.0) < 1e-12) return lo * std::pow(hi / lo, u);
  const double a = std::pow(lo, 1.0 - alpha);
  const double b = std::pow(hi, 1.0 - alpha);
  return std::clamp(std::pow(a + u * (b - a), 1.0 / (1.0 - alpha)), lo, hi);
}

double solve_power_exponent(double lo, double hi, double mean) {
  // The mean is decreasing in alpha.
  double a = -60.0;
  double b = 60.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (truncated_power_mean(mid, lo, hi) > mean)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

std::vector<Index> block_sizes(const BenchmarkSpec& spec, Rng& rng) {
  const Index k = spec.num_blocks;
  const Index n = spec.num_nodes;
  std::vector<double> weight(k, 1.0);
  if (k >= 2 && spec.size_heterogeneity > 1.0) {
    weight[1] = spec.size_heterogeneity;
    for (Index r = 2; r < k; ++r)
      weight[r] = 1.0 + (spec.size_heterogeneity - 1.0) * rng.uniform();
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  std::vector<Index> sizes(k);
  std::vector<std::pair<double, Index>> remainder(k);
  Index assigned = 0;
  for (Index r = 0; r < k; ++r) {
    const double exact = static_cast<double>(n) * weight[r] / total;
    sizes[r] = static_cast<Index>(std::floor(exact));
    remainder[r] = {exact - static_cast<double>(sizes[r]), r};
    assigned += sizes[r];
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (Index i = 0; assigned < n; ++i, ++assigned) ++sizes[remainder[i % k].second];
  // Tiny N: no block may end up empty.
  for (Index r = 0; r < k; ++r) {
    while (sizes[r] == 0) {
      const auto largest = std::max_element(sizes.begin(), sizes.end());
      --*largest;
      ++sizes[r];
    }
  }
  return sizes;
}

// Expected number of distinct edges, sum over pairs of 1 - exp(-scale * u_ij),
// and its derivative in scale.
struct PairSample {
  std::vector<double> rates;  // u_ij at scale 1
  double weight = 1.0;        // pairs represented by each entry
};

PairSample collect_pair_rates(const SbmParams& p, Rng& rng) {
  constexpr double kExactPairLimit = 1.5e7;
  constexpr Index kSampledPairs = 2'000'000;
  const Index n = p.num_nodes();
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  PairSample out;
  if (pairs <= kExactPairLimit) {
    out.rates.reserve(static_cast<std::size_t>(pairs));
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) out.rates.push_back(p.rate(i, j));
    return out;
  }
  out.rates.reserve(kSampledPairs);
  for (Index k = 0; k < kSampledPairs; ++k) {
    NodeId i, j;
    do {
      i = static_cast<NodeId>(rng.bounded(n));
      j = static_cast<NodeId>(rng.bounded(n));
    } while (i == j);
    out.rates.push_back(p.rate(i, j));
  }
  out.weight = pairs / static_cast<double>(kSampledPairs);
  return out;
}

}  // namespace

EdgeMass expected_edge_mass(const SbmParams& params) {
  const Index k = params.num_blocks();
  std::vector<double> sum(k, 0.0), sum_sq(k, 0.0);
  for (Index i = 0; i < params.num_nodes(); ++i) {
    sum[params.assignment[i]] += params.theta[i];
    sum_sq[params.assignment[i]] += params.theta[i] * params.theta[i];
  }
  EdgeMass mass;
  for (Index r = 0; r < k; ++r) {
    mass.within += params.omega(r, r) * 0.5 * (sum[r] * sum[r] - sum_sq[r]);
    for (Index s = r + 1; s < k; ++s) mass.between += params.omega(r, s) * sum[r] * sum[s];
  }
  return mass;
}

SbmParams build_benchmark_params(const BenchmarkSpec& spec) {
  spec.validate();
  const Index n = spec.num_nodes;
  const Index k = spec.num_blocks;
  SbmParams p;

  Rng size_rng = Rng::substream(spec.seed, "block-sizes");
  const auto sizes = block_sizes(spec, size_rng);
  p.assignment.reserve(n);
  for (Index r = 0; r < k; ++r)
    p.assignment.insert(p.assignment.end(), sizes[r], static_cast<BlockId>(r));
  Rng shuffle_rng = Rng::substream(spec.seed, "block-shuffle");
  for (Index i = n - 1; i > 0; --i)
    std::swap(p.assignment[i], p.assignment[shuffle_rng.bounded(i + 1)]);

  Rng theta_rng = Rng::substream(spec.seed, "theta");
  p.theta.resize(n);
  if (spec.min_degree == spec.max_degree) {
    std::fill(p.theta.begin(), p.theta.end(), spec.min_degree);
  } else {
    const double alpha =
        solve_power_exponent(spec.min_degree, spec.max_degree, spec.mean_degree);
    for (auto& t : p.theta)
      t = sample_truncated_power(alpha, spec.min_degree, spec.max_degree,
                                 theta_rng.uniform());
  }

  std::vector<double> block_theta(k, 0.0), block_theta_sq(k, 0.0);
  for (Index i = 0; i < n; ++i) {
    block_theta[p.assignment[i]] += p.theta[i];
    block_theta_sq[p.assignment[i]] += p.theta[i] * p.theta[i];
  }
  // Edge mass per unit a (within) and per unit b (between).
  double within_unit = 0.0;
  double between_unit = 0.0;
  for (Index r = 0; r < k; ++r) {
    within_unit +=
        0.5 * (block_theta[r] * block_theta[r] - block_theta_sq[r]) / block_theta[r];
    for (Index s = r + 1; s < k; ++s) between_unit += block_theta[r] * block_theta[s];
  }
  if (!(within_unit > 0.0))
    throw ParameterError("infeasible spec: every block is a single node");
  const double ratio = spec.within_between_ratio;
  const double within_share = k == 1 ? 1.0 : ratio / (1.0 + ratio);
  const double between_share = 1.0 - within_share;

  // Unscaled Omega carrying unit total edge mass.
  p.omega.resize(k, k);
  for (Index r = 0; r < k; ++r)
    for (Index s = 0; s < k; ++s)
      p.omega(r, s) = r == s ? within_share / within_unit / block_theta[r]
                             : between_share / between_unit;

  // Newton on the total mass so expected distinct edges hit the target. The
  // objective is concave and increasing, and starting at the target mass puts
  // us below the root, so iterates increase monotonically.
  const double target_edges = 0.5 * static_cast<double>(n) * spec.mean_degree;
  Rng calibration_rng = Rng::substream(spec.seed, "calibration");
  const PairSample sample = collect_pair_rates(p, calibration_rng);
  double reachable = 0.0;
  for (double u : sample.rates) reachable += (u > 0.0 ? sample.weight : 0.0);
  if (target_edges >= reachable)
    throw ParameterError("infeasible spec: mean degree " +
                         std::to_string(spec.mean_degree) +
                         " needs more edges than the block structure allows");
  double mass = target_edges;
  for (int it = 0; it < 100; ++it) {
    double f = -target_edges;
    double df = 0.0;
    for (double u : sample.rates) {
      const double e = std::exp(-mass * u);
      f += sample.weight * (1.0 - e);
      df += sample.weight * u * e;
    }
    if (std::abs(f) <= 1e-9 * target_edges || !(df > 0.0)) break;
    mass -= f / df;
  }
  p.omega *= mass;
  p.validate();
  return p;
}

BlockPairPrefix::BlockPairPrefix(std::span<const double> row_theta,
                                 std::span<const double> col_theta)
    : diagonal_(false),
      num_cells_(static_cast<Index>(row_theta.size() * col_theta.size())),
      row_theta_(row_theta.begin(), row_theta.end()),
      col_theta_(col_theta.begin(), col_theta.end()) {
  row_prefix_.assign(row_theta.size() + 1, 0.0);
  col_prefix_.assign(col_theta.size() + 1, 0.0);
  std::partial_sum(row_theta.begin(), row_theta.end(), row_prefix_.begin() + 1);
  std::partial_sum(col_theta.begin(), col_theta.end(), col_prefix_.begin() + 1);
}

BlockPairPrefix::BlockPairPrefix(std::span<const double> block_theta)
    : BlockPairPrefix(block_theta, block_theta) {
  diagonal_ = true;
  const Index n = static_cast<Index>(block_theta.size());
  num_cells_ = n * (n - 1) / 2;
  const double total = row_prefix_[n];
  tri_row_prefix_.assign(n + 1, 0.0);
  for (Index a = 0; a < n; ++a)
    tri_row_prefix_[a + 1] =
        tri_row_prefix_[a] + row_theta_[a] * (total - row_prefix_[a + 1]);
}

Index BlockPairPrefix::row_start(Index a) const {
  if (!diagonal_) return a * cols();
  const Index n = rows();
  return a * (2 * n - 1 - a) / 2;
}

std::pair<Index, Index> BlockPairPrefix::cell(Index c) const {
  if (!diagonal_) return {c / cols(), c % cols()};
  // Invert row_start(a) <= c in closed form, then fix rounding.
  const Index n = rows();
  const double m = static_cast<double>(2 * n - 1);
  const double disc = std::max(0.0, m * m - 8.0 * static_cast<double>(c));
  Index a = static_cast<Index>(std::floor((m - std::sqrt(disc)) / 2.0));
  a = std::clamp<Index>(a, 0, std::max<Index>(0, n - 2));
  while (a > 0 && row_start(a) > c) --a;
  while (a + 1 < n - 1 && row_start(a + 1) <= c) ++a;
  return {a, a + 1 + (c - row_start(a))};
}

double range_sum(const BlockPairPrefix& p, double omega_rs, Index x, Index y) {
  if (x < 1 || y < x || y > p.num_cells_)
    throw ParameterError("range [" + std::to_string(x) + ", " + std::to_string(y) +
                         "] outside cell table of size " +
                         std::to_string(p.num_cells_));
  const auto [a1, b1] = p.cell(x - 1);
  const auto [a2, b2] = p.cell(y - 1);
  const auto& rows = p.row_prefix_;
  const auto& cols = p.col_prefix_;
  if (a1 == a2) return omega_rs * p.row_theta_[a1] * (cols[b2 + 1] - cols[b1]);
  const double col_total = cols.back();
  double sum = p.row_theta_[a1] * (col_total - cols[b1]);
  if (p.diagonal_) {
    sum += p.tri_row_prefix_[a2] - p.tri_row_prefix_[a1 + 1];
    sum += p.row_theta_[a2] * (cols[b2 + 1] - cols[a2 + 1]);
  } else {
    sum += (rows[a2] - rows[a1 + 1]) * col_total;
    sum += p.row_theta_[a2] * cols[b2 + 1];
  }
  return omega_rs * sum;
}

std::int64_t sample_zero_truncated_poisson(double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw ParameterError("Poisson rate must be positive");
  constexpr double kChunk = 500.0;
  if (lambda <= kChunk) {
    // Inverse CDF over k >= 1 with mass renormalized by 1 - e^-lambda.
    const double target = rng.uniform() * -std::expm1(-lambda);
    double pk = lambda * std::exp(-lambda);
    double cumulative = pk;
    std::int64_t k = 1;
    while (cumulative < target && pk > 0.0) {
      ++k;
      pk *= lambda / static_cast<double>(k);
      cumulative += pk;
    }
    return k;
  }
  // Large rates: P(0) underflows, so sum Poisson chunks and reject zeros.
  for (;;) {
    std::int64_t total = 0;
    double remaining = lambda;
    while (remaining > 0.0) {
      const double part = std::min(remaining, kChunk);
      remaining -= part;
      const double u = rng.uniform();
      double pk = std::exp(-part);
      double cumulative = pk;
      std::int64_t k = 0;
      while (cumulative < u && pk > 0.0) {
        ++k;
        pk *= part / static_cast<double>(k);
        cumulative += pk;
      }
      total += k;
    }
    if (total > 0) return total;
  }
}

std::vector<WeightedEdge> sample_sbm_multigraph(const SbmParams& params,
                                                std::uint64_t seed) {
  params.validate();
  const Index k = params.num_blocks();
  std::vector<std::vector<NodeId>> members(k);
  std::vector<std::vector<double>> member_theta(k);
  for (NodeId i = 0; i < params.num_nodes(); ++i) {
    members[params.assignment[i]].push_back(i);
    member_theta[params.assignment[i]].push_back(params.theta[i]);
  }

  std::vector<WeightedEdge> edges;
  for (Index r = 0; r < k; ++r) {
    for (Index s = r; s < k; ++s) {
      const double omega = params.omega(r, s);
      if (omega == 0.0) continue;
      const BlockPairPrefix prefix = r == s
                                         ? BlockPairPrefix(member_theta[r])
                                         : BlockPairPrefix(member_theta[r], member_theta[s]);
      const Index cells = prefix.num_cells();
      Rng rng = Rng::substream(seed, "sbm-pair", static_cast<std::uint64_t>(r * k + s));
      Index m = 1;
      while (m <= cells) {
        const double threshold = -std::log(rng.uniform_open());
        // No event anywhere in the remaining cells.
        if (range_sum(prefix, omega, m, cells) <= threshold) break;
        Index lo = m;
        Index hi = cells;
        while (lo < hi) {
          const Index mid = lo + (hi - lo) / 2;
          if (range_sum(prefix, omega, m, mid) > threshold)
            hi = mid;
          else
            lo = mid + 1;
        }
        const auto [a, b] = prefix.cell(lo - 1);
        const NodeId u = members[r][a];
        const NodeId v = members[s][b];
        const double lambda = omega * member_theta[r][a] * member_theta[s][b];
        edges.push_back({std::min(u, v), std::max(u, v),
                         sample_zero_truncated_poisson(lambda, rng)});
        m = lo + 1;
      }
    }
  }
  return edges;
}

Graph sample_sbm(const SbmParams& params, std::uint64_t seed) {
  const auto weighted = sample_sbm_multigraph(params, seed);
  std::vector<Edge> edges;
  edges.reserve(weighted.size());
  for (const auto& e : weighted) edges.emplace_back(e.u, e.v);
  return Graph::from_edges(params.num_nodes(), edges);
}

}  // namespace raftgp
