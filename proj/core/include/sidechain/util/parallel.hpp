#pragma once

#include <cstddef>
#include <functional>

namespace sidechain {

/// Number of worker threads to use for `tasks` independent jobs. Honors the
/// BENCH_WORKERS environment variable as an upper bound.
int worker_count(std::size_t tasks);

/// Runs body(i) for i in [0, count) on up to worker_count(count) threads.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sidechain
