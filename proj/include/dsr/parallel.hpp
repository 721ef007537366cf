#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dsr {

// Worker count from DSR_WORKERS, falling back to the hardware thread count.
inline int worker_count() {
    if (const char* env = std::getenv("DSR_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Strided parallel loop over [0, count). Callers must write to disjoint
// per-index state; results are then independent of the worker count.
template <typename F>
void parallel_for(int count, F&& fn) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace dsr
