#ifndef KS_PARALLEL_HPP
#define KS_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ks {

/// Number of worker threads used by parallel loops. Defaults to the value of
/// KS_THREADS if set, otherwise hardware concurrency. Can be overridden at
/// runtime (the CLI --threads option forwards here).
inline int& thread_count() {
  static int n = [] {
    if (const char* env = std::getenv("KS_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return n;
}

inline void set_thread_count(int n) {
  if (n > 0) thread_count() = n;
}

/// Runs fn(i) for i in [0, n). Work items must be independent and write to
/// disjoint locations; values produced must not depend on scheduling. Items
/// are claimed one at a time from a shared counter.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  int nthreads = thread_count();
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads) - 1);
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace ks

#endif
