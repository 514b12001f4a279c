#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace fy {

/// Worker count for level sums. The chunk layout never depends on it, so
/// results are identical for any value. Defaults to FY_THREADS or 1.
int worker_count();
void set_worker_count(int n);

namespace detail {

inline std::uint64_t chunk_grid(std::uint64_t count) {
  // Fixed function of the work size only: single chunk for small sums,
  // otherwise 64 equal ranges combined in index order.
  return count < 8192 ? 1 : 64;
}

}  // namespace detail

/// Deterministic parallel reduction over [0, count). `make_partial(lo, hi)`
/// computes one chunk; partials are combined with `merge` in ascending chunk
/// order regardless of which thread produced them.
template <typename Partial, typename ChunkFn, typename MergeFn>
Partial chunked_reduce(std::uint64_t count, ChunkFn make_partial, MergeFn merge) {
  const std::uint64_t chunks = detail::chunk_grid(count);
  const int workers = worker_count();
  std::vector<Partial> partials(chunks);

  if (chunks == 1 || workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      std::uint64_t lo = count * c / chunks, hi = count * (c + 1) / chunks;
      partials[c] = make_partial(lo, hi);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto run = [&] {
      for (;;) {
        std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        std::uint64_t lo = count * c / chunks, hi = count * (c + 1) / chunks;
        partials[c] = make_partial(lo, hi);
      }
    };
    std::vector<std::thread> pool;
    int n = workers < static_cast<int>(chunks) ? workers : static_cast<int>(chunks);
    pool.reserve(n - 1);
    for (int i = 1; i < n; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
  }

  Partial acc = std::move(partials[0]);
  for (std::uint64_t c = 1; c < chunks; ++c) merge(acc, partials[c]);
  return acc;
}

}  // namespace fy
