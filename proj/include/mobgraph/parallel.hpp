#pragma once

#include <cstddef>
#include <functional>

namespace mobgraph {

// Worker count: MOBGRAPH_THREADS if set to a positive integer, otherwise
// (unset, "0", or garbage) std::thread::hardware_concurrency().
std::size_t thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() workers. Which worker
// picks up which index is unspecified, so the body must only write to slots
// owned by i. Results are deterministic as long as per-index outputs are.
// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace mobgraph
