#pragma once

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace localforge {

// Runs fn(0..n-1) across `threads` workers in fixed chunks. Results must be
// written to preallocated per-index slots so the outcome is independent of
// scheduling; with threads <= 1 the loop runs inline.
inline void parallelFor(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) {
        return;
    }
    if (threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr firstError;
    std::mutex errorLock;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> guard(errorLock);
                if (!firstError) {
                    firstError = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (firstError) {
        std::rethrow_exception(firstError);
    }
}

} // namespace localforge
