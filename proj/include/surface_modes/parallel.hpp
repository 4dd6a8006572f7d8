#pragma once

#include <cstddef>
#include <functional>

namespace surface_modes {

/// Worker count from SURFACE_MODES_THREADS, else hardware concurrency.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means
/// default_thread_count()). Exceptions escaping body are rethrown after all
/// workers join; callers that need per-item errors must catch inside body.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace surface_modes
