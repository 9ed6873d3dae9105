#pragma once

#include <cstddef>
#include <functional>

namespace cohlab {

// Runs body(i) for i in [0, count) on up to `threads` workers. Work is handed
// out by an atomic counter; callers write results into slot i so the outcome
// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

std::size_t default_thread_count();

}  // namespace cohlab
