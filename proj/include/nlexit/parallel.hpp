#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace nlexit {

/// Runs fn(begin, end) over contiguous chunks of [0, n) on `threads`
/// workers. Callers write results into disjoint preallocated slots indexed
/// by item, so the thread count never affects the output.
inline void parallel_for(std::uint64_t n, int threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (n == 0) return;
  if (threads < 1) threads = 1;
  const auto t = static_cast<std::uint64_t>(threads);
  if (t <= 1 || n < 2 * t) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(t);
  const std::uint64_t chunk = (n + t - 1) / t;
  for (std::uint64_t w = 0; w < t; ++w) {
    const std::uint64_t b = w * chunk;
    if (b >= n) break;
    const std::uint64_t e = std::min(n, b + chunk);
    workers.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace nlexit
