// Minimal fork-join loop over an index range. The worker count comes from
// ALEDG_THREADS (default: hardware concurrency).
#ifndef ALEDG_PARALLEL_HPP_
#define ALEDG_PARALLEL_HPP_

#include <functional>

namespace aledg {

int thread_count();
void set_thread_count(int n);

/// Calls fn(i) for i in [0, n). Exceptions from workers are rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace aledg

#endif  // ALEDG_PARALLEL_HPP_
