#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace apvar {

inline int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : (int)n;
}

// Run fn(i) for i in [0, n) on a small pool.  Work is handed out in
// fixed-size blocks; callers that need determinism write results into
// preallocated slots indexed by i and reduce in index order afterwards,
// so the outcome never depends on scheduling or thread count.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn, std::size_t block = 16) {
  if (n == 0) return;
  if (threads <= 1 || n <= block) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(block);
      if (b >= n) break;
      std::size_t e = std::min(b + block, n);
      for (std::size_t i = b; i < e; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min<std::size_t>((std::size_t)threads, (n + block - 1) / block);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

} // namespace apvar
