#pragma once

// Index-based parallel map. Workers claim indices from an atomic counter and
// write into per-index slots, so results never depend on the worker count.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tropimod {

inline int default_jobs() {
    if (const char* env = std::getenv("TROPIMOD_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

template <typename F>
void parallel_for(std::size_t n, int jobs, F&& body) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min<std::size_t>(jobs, n);
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace tropimod
