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
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "raftgp/types.hpp"

namespace raftgp {

/// Worker count: RAFTGP_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_threads() {
  if (const char* env = std::getenv("RAFTGP_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(begin, end) over [0, n) in chunks of a fixed size. Chunk
/// boundaries depend only on n and chunk, never on the thread count, so any
/// per-chunk computation is bit-identical however the work is scheduled.
template <typename Fn>
void parallel_chunks(Index n, Index chunk, Fn&& fn) {
  if (n <= 0) return;
  chunk = std::max<Index>(1, chunk);
  const Index num_chunks = (n + chunk - 1) / chunk;
  const unsigned threads =
      static_cast<unsigned>(std::min<Index>(worker_threads(), num_chunks));
  if (threads <= 1) {
    for (Index c = 0; c < num_chunks; ++c)
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (Index c = next++; c < num_chunks; c = next++) {
      try {
        fn(c * chunk, std::min(n, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace raftgp
