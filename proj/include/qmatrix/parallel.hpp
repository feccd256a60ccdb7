#pragma once

#include <cstddef>
#include <functional>

namespace qmatrix {

/// Worker budget: QMATRIX_THREADS if set (>= 1), else the hardware
/// concurrency, never more than the hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..count-1) across the worker budget. The first exception thrown by
/// any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace qmatrix
