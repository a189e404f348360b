#pragma once

#include <cstddef>
#include <functional>

namespace augustin {

/// Worker count used by per-state loops. Defaults to 1. Results never depend
/// on it: parallel loops only fill per-index slots and reductions run in
/// ascending index order afterwards.
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [0, n), possibly on several threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace augustin
