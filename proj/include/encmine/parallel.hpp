#pragma once

#include <cstddef>
#include <functional>

namespace encmine {

/// Runs fn(i) for every i in [0, count) on up to `threads` workers.
/// Work items must write to disjoint state; the first exception thrown by any
/// worker is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace encmine
