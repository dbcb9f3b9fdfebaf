#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qtop {

/* Thread cap from QUADRTOP_THREADS (default: hardware concurrency).
   Work items must be independent; results are written to pre-sized
   storage so the outcome does not depend on the thread count. */
inline int thread_cap() {
    if (const char* env = std::getenv("QUADRTOP_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

inline void parallel_for(int count, const std::function<void(int)>& fn) {
    int threads = std::min(thread_cap(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace qtop
