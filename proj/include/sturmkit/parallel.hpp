#pragma once

#include <cstddef>
#include <functional>

namespace sturmkit {

/// Worker count for sweeps: STURMKIT_THREADS if set and positive, otherwise
/// the hardware concurrency (at least 1).
std::size_t sweep_threads();

/// Runs body(i) for i in [0, n) across sweep_threads() workers. Callers write
/// results by index, so the outcome does not depend on scheduling. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sturmkit
