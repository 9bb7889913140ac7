#pragma once

#include <functional>

namespace wigner {

// Worker cap from WIGNER_LAB_THREADS (0 or unset = hardware concurrency).
int thread_cap();

// Runs fn(0) .. fn(count-1), possibly on several threads. Tasks must only
// write to per-index slots. If any task throws, the exception from the
// lowest index is rethrown after all workers finish.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace wigner
