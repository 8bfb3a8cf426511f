#pragma once

// Per-point evaluations are independent; CURVLAB_THREADS caps the worker
// count (unset or 0 means sequential).  Results land in caller-indexed
// slots, so aggregation order is deterministic regardless of thread count.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace curvlab {

inline int configured_threads() {
    const char* env = std::getenv("CURVLAB_THREADS");
    if (!env) return 0;
    int v = std::atoi(env);
    return v > 0 ? v : 0;
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int nthreads = configured_threads();
    if (nthreads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace curvlab
