#pragma once

// Minimal fork-join helper: run fn(i) for i in [0, count) on `workers`
// threads. Exceptions propagate from the first failing index.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace periodgram {

inline void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
    if (count <= 0) return;
    workers = static_cast<int>(std::max<long>(1, std::min<long>(workers, count)));
    if (workers == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mtx;
    auto run = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mtx);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace periodgram
