#pragma once

#include <functional>

namespace sogdd {

/// Upper bound on worker threads used by the library. 0 selects
/// std::thread::hardware_concurrency(). Results never depend on this value.
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

/// Runs body(i) for i in [0, n), partitioned into contiguous chunks.
/// Each index must write only to its own output slots.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace sogdd
