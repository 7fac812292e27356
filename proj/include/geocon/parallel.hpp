#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace geocon {

// Worker-thread cap: GEOCON_THREADS when set, hardware concurrency otherwise.
inline int thread_cap() {
    if (const char* env = std::getenv("GEOCON_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) across workers. Items must be independent; callers keep
// determinism by writing results into per-index slots.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    const int workers = std::min<long>(thread_cap(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace geocon
