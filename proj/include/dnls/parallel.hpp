#pragma once

#include <cstddef>
#include <functional>

namespace dnls {

/// Number of workers: the WORKERS environment variable when set (>= 1),
/// otherwise the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [begin, end) across worker_count() threads.
/// Each index is processed by exactly one worker, so writes to per-index
/// output slots produce identical results for any worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace dnls
