#pragma once

#include <functional>

namespace geldg {

// Worker-thread cap: GELDG_THREADS env var, else hardware concurrency.
int max_threads();

// Runs fn(i) for i in [0, count); blocks until done. Work items must be
// independent (disjoint writes). Falls back to a serial loop for small
// counts or when only one thread is available.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace geldg
