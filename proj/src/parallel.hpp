#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace qlth::detail {

// Runs fn(0..n-1) on at most `threads` workers. Tasks must be
// independent; callers collect results by index so output order never
// depends on scheduling.
inline void parallel_for_index(int n, int threads,
                               const std::function<void(int)> &fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    const int n_workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
}

} // namespace qlth::detail
