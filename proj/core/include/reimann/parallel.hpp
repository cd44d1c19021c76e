#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace reimann {

/// Number of worker threads. Honors the REIMANN_KIT_THREADS cap; defaults to
/// hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across workers. Each index is processed
/// exactly once; results must be written to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Evaluates per-item results in parallel and returns them in index order, so
/// any subsequent fold is independent of the worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace reimann
