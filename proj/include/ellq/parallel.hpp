#pragma once

#include <cstdint>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ellq {

// Runtime switch for the OpenMP kernels. The serial reference paths stay
// available for testing and benchmarking regardless of this flag.
bool parallel_enabled();
void set_parallel_enabled(bool on);
int worker_count();
void set_worker_count(int workers); // 0 = library default

// Data-parallel loop over [begin, end). The body must be safe to run
// concurrently for distinct indices and must not depend on iteration order;
// reductions are done by the caller over precomputed slots so results stay
// bitwise deterministic for any thread count.
template <typename F>
void parallel_for(std::int64_t begin, std::int64_t end, F&& body) {
#if defined(_OPENMP)
    if (parallel_enabled() && end - begin > 1) {
        const int nw = worker_count();
        std::exception_ptr first_error = nullptr;
        // exceptions may not escape an OpenMP region; trap and rethrow
#pragma omp parallel for schedule(static) num_threads(nw)
        for (std::int64_t i = begin; i < end; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(ellq_parallel_for_error)
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
        if (first_error)
            std::rethrow_exception(first_error);
        return;
    }
#endif
    for (std::int64_t i = begin; i < end; ++i)
        body(i);
}

} // namespace ellq
