#pragma once

#include <cstddef>
#include <functional>

namespace fockc {

// Worker count: FOCKC_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Calls fn(i) for i in [begin, end), split into contiguous chunks across
// thread_count() threads. fn must not touch shared mutable state.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

}  // namespace fockc
