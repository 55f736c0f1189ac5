#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace stratloc {

/// Worker count: STRATLOC_THREADS when set and positive, else the
/// hardware concurrency.  The only environment variable the engine reads.
inline unsigned thread_count() {
    if (const char* env = std::getenv("STRATLOC_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs fn(i) for i in [0, n).  Results must be written to index-addressed
/// slots so the outcome is identical for every thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace stratloc
