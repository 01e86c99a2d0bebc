#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mwc {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(item) for item in [0, items) on a pool of workers. Items are
// claimed dynamically; callers store per-item results and reduce in item
// order so the outcome does not depend on the thread count.
template <class Body>
void parallel_for(std::size_t items, int threads, Body&& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(items, 1)))));
    if (workers <= 1) {
        for (std::size_t i = 0; i < items; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        try {
            for (std::size_t i = next++; i < items; i = next++) body(i);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = items;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace mwc
