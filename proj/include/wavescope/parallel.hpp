#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wavescope {

/// Thread count resolution: explicit argument wins, then WAVESCOPE_THREADS,
/// then 1. Results never depend on the thread count; only wall time does.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WAVESCOPE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

/// Deterministic parallel map over [begin, end): each worker owns a
/// contiguous block, no shared mutable state.
inline void parallel_for(int begin, int end, int threads,
                         const std::function<void(int)>& body) {
  const int n = end - begin;
  if (n <= 0) return;
  threads = resolve_threads(threads);
  if (threads <= 1 || n == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  if (threads > n) threads = n;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * w / threads);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace wavescope
