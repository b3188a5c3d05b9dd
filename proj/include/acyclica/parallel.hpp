#ifndef ACYCLICA_PARALLEL_HPP
#define ACYCLICA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace acyclica::par {

/// Worker cap: min(omp_get_max_threads(), ACYCLICA_THREADS if set).
int effective_threads();

/// Runs fn(i) for i in [0, n).  Tasks must be independent; results must not
/// depend on execution order.  Falls back to a serial loop when OpenMP is
/// unavailable or the cap is 1.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

} // namespace acyclica::par

#endif
