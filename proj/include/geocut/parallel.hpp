#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace geocut {

/// Number of reduction chunks. Fixed independently of the worker count so
/// results are bit-reproducible for any thread configuration.
inline constexpr int kReduceChunks = 256;

inline int resolveThreadCount(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, n) into kReduceChunks contiguous ranges, evaluates chunkFn on
/// each (sequentially within a chunk), and combines partial results in chunk
/// order. Acc needs operator+.
template <typename Acc, typename ChunkFn>
Acc chunkedReduce(std::size_t n, int threads, Acc zero, ChunkFn&& chunkFn) {
  std::vector<Acc> partial(kReduceChunks, zero);
  auto range = [n](int c) {
    return std::pair<std::size_t, std::size_t>(n * static_cast<std::size_t>(c) / kReduceChunks,
                                               n * static_cast<std::size_t>(c + 1) / kReduceChunks);
  };
  const int workerCount = std::min(resolveThreadCount(threads), kReduceChunks);
  if (workerCount <= 1 || n < 2048) {
    for (int c = 0; c < kReduceChunks; ++c) {
      const auto [b, e] = range(c);
      if (b < e) partial[static_cast<std::size_t>(c)] = chunkFn(b, e);
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int c = next.fetch_add(1); c < kReduceChunks; c = next.fetch_add(1)) {
        const auto [b, e] = range(c);
        if (b < e) partial[static_cast<std::size_t>(c)] = chunkFn(b, e);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workerCount - 1));
    for (int t = 0; t < workerCount - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  Acc acc = zero;
  for (int c = 0; c < kReduceChunks; ++c) acc = acc + partial[static_cast<std::size_t>(c)];
  return acc;
}

}  // namespace geocut
