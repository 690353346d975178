#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace rsim {

// Worker count actually used for `jobs` items when the caller asked for
// `threads` (0 or negative meaning "hardware concurrency").
inline int resolve_threads(int threads, long jobs) {
  int workers = threads;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  if (jobs >= 1 && workers > jobs) workers = static_cast<int>(jobs);
  return workers;
}

// Static block partition of [begin, end) over `threads` workers. Results must
// be made scheduling-independent by the caller (per-index RNG streams and
// order-independent reductions); the partition itself does not affect any
// stream assignment.
inline void parallel_for(long begin, long end, int threads,
                         const std::function<void(long index, int worker)>& fn) {
  const long count = end - begin;
  if (count <= 0) return;
  const int workers = resolve_threads(threads, count);
  if (workers == 1) {
    for (long i = begin; i < end; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = begin + w * chunk;
    const long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &fn] {
      for (long i = lo; i < hi; ++i) fn(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rsim
