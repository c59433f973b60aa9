#pragma once

#include <cstddef>
#include <functional>

namespace blob {

// Worker count used by quadrature and Monte Carlo loops. 0 or less resets to
// the hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for every i in [0, n). Each index must write only its own
// output slot; callers reduce afterwards in index order, so results do not
// depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace blob
