#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qvf {

// Worker count: QVF_THREADS if set (clamped to [1,64]), else hardware
// concurrency capped at 8.
inline int thread_count() {
  if (const char* s = std::getenv("QVF_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(std::min(h, 8u)) : 4;
}

// Splits [0, n) into contiguous chunks, one worker per chunk. fn(begin, end)
// must not throw and must write only to disjoint state; callers reduce after.
template <typename Fn>
void parallel_for(long n, Fn fn) {
  int workers = std::min<long>(thread_count(), n);
  if (workers <= 1) {
    fn(0L, n);
    return;
  }
  std::vector<std::thread> pool;
  long chunk = (n + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    long b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([=] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qvf
