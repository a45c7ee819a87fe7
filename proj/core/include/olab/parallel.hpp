#pragma once

#include <cstddef>
#include <functional>

namespace olab {

// Worker count resolution: explicit argument > ORLICZ_LAB_THREADS > hardware.
// An argument of 0 means "not specified".
int resolve_thread_count(int requested = 0);

// Runs task(i) for i in [0, count). Tasks must write only to their own
// slots; the counter-based RNG makes results independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  int threads = 0);

}  // namespace olab
