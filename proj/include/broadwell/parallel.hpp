#pragma once

#include <cstddef>
#include <functional>

namespace broadwell {

/// Caps the number of worker threads used by grid-wide evaluations.
/// 0 restores the default (hardware concurrency).
void set_worker_threads(unsigned n);
unsigned worker_threads();

/// Calls body(i) for i in [0, count). Iterations must be independent; the
/// result does not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace broadwell
