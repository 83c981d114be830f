// parallel.hpp — deterministic index-parallel loop for independent work items.

#pragma once

#include <cstddef>
#include <functional>

namespace spc {

// Runs body(i) for i in [0, count) across hardware threads. Each index is
// handled exactly once and results must be written to per-index slots, so
// the assembled output is identical to a serial run.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace spc
