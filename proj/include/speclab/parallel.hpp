#pragma once

#include <cstddef>
#include <functional>

namespace speclab {

unsigned default_jobs();

/// Runs fn(0..count-1) on up to `jobs` threads. Work items must be
/// independent; exceptions are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace speclab
