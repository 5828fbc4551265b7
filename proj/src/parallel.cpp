#include "ellq/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace ellq {

namespace {

std::atomic<bool> g_enabled{[] {
    const char* env = std::getenv("ELLQ_SERIAL");
    return !(env && env[0] == '1');
}()};

std::atomic<int> g_workers{0};

} // namespace

bool parallel_enabled() {
    return g_enabled.load(std::memory_order_relaxed);
}

void set_parallel_enabled(bool on) {
    g_enabled.store(on, std::memory_order_relaxed);
}

int worker_count() {
    int w = g_workers.load(std::memory_order_relaxed);
    if (w > 0)
        return w;
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_worker_count(int workers) {
    g_workers.store(workers > 0 ? workers : 0, std::memory_order_relaxed);
}

} // namespace ellq
