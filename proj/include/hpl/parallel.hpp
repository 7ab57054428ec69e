#pragma once

// Static index partitioning across worker threads.  HPL_THREADS caps the
// worker count (0 or unset means auto).  Each index is processed exactly
// once and owns its output slot, so results never depend on scheduling.

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hpl {

inline int worker_count() {
    if (const char* env = std::getenv("HPL_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class Body>
void parallel_for(std::int64_t n, const Body& body) {
    const int workers = worker_count();
    if (workers <= 1 || n < 256) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=] {
            for (std::int64_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace hpl
