#pragma once

#include <cstddef>
#include <functional>

namespace bsl {

// Worker count: hardware concurrency, capped by BOUNDSTATE_LAB_THREADS when set.
int thread_cap();

// Runs body(i) for i in [0, n). Iterations must be independent; results are
// expected to be written to per-index slots so output order never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bsl
