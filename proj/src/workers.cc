#include "amreager/workers.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace amreager {

int WorkerCount(int requested, size_t jobs) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char *env = std::getenv("AMREAGER_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
    }
  }
  n = std::max(1, n);
  return static_cast<int>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

void ParallelFor(size_t n, int threads, const std::function<void(size_t)> &body) {
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next++; i < n; i = next++) body(i);
  };
  const int count = WorkerCount(threads, n);
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
}

}  // namespace amreager
