#ifndef AMREAGER_WORKERS_H_
#define AMREAGER_WORKERS_H_

#include <cstddef>
#include <functional>

namespace amreager {

// requested <= 0 means the hardware concurrency, capped by AMREAGER_THREADS.
// Never more than jobs, never less than 1.
int WorkerCount(int requested, size_t jobs);

// Calls body(i) for every i in [0, n) on up to `threads` workers.
void ParallelFor(size_t n, int threads, const std::function<void(size_t)> &body);

}  // namespace amreager

#endif  // AMREAGER_WORKERS_H_
