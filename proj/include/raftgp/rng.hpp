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
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace raftgp {

/// Derives an independent 64-bit seed from a parent seed, an operation label
/// and an index. Stable across platforms: FNV-1a over the label bytes mixed
/// through SplitMix64 finalizers.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index = 0);

/// Portable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All distributions are implemented here rather than taken from
/// <random>, because the standard leaves their algorithms unspecified:
///  - uniform doubles use the top 53 bits of one engine draw;
///  - bounded integers use rejection sampling on the raw 64-bit draw;
///  - normals use the Box-Muller transform, consuming two uniforms per pair
///    and returning the cosine branch first, then the cached sine branch.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::string_view label,
                       std::uint64_t index = 0) {
    return Rng(derive_seed(seed, label, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t bounded(std::uint64_t n);

  /// Standard normal draw.
  double normal();

  template <typename Derived>
  void fill_normal(Eigen::DenseBase<Derived>& out, double stddev) {
    using Scalar = typename Derived::Scalar;
    // Row-major traversal regardless of storage order, so the values do not
    // depend on the matrix layout.
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        out(i, j) = static_cast<Scalar>(stddev * normal());
  }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace raftgp
