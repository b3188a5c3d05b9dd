#include "acyclica/parallel.hpp"

#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace acyclica::par {

int effective_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("ACYCLICA_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    int threads = effective_threads();
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < (long long)n; ++i) {
        try {
            fn((size_t)i);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
#else
    for (size_t i = 0; i < n; ++i) fn(i);
#endif
}

} // namespace acyclica::par
