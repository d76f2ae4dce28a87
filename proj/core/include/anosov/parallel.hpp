#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace anosov {

/// Worker count from ANOSOV_THREADS, defaulting to hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each index
/// is processed exactly once; exceptions are rethrown on the calling thread
/// (the first by index).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Produces one result per task and returns them in task order, so any fold
/// over the returned vector is independent of the worker count.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F&& f) {
  std::vector<R> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace anosov
