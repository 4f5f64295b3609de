#pragma once

#include <cstddef>
#include <functional>

namespace fracdim {

// Runs body(i) for i in [0, count) on up to `jobs` threads (0 = hardware
// concurrency). Each index is processed exactly once; callers writing result
// slot i get schedule-independent output. The first exception thrown by any
// body is rethrown on the calling thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace fracdim
