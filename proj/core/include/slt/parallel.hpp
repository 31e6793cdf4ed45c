#pragma once

#include <cstddef>
#include <functional>

namespace slt {

/// Worker cap: SLT_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, count). Indices are claimed dynamically by up to
/// worker_count() threads; the exception from the lowest failing index is rethrown after all
/// workers stop. Results must be written to per-index slots so the outcome
/// does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace slt
