#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace padic {

// Runs body(i) for i in [0, count) on up to `threads` workers. Work is handed out by
// index, so results written to slot i are identical for any thread count. The first
// exception thrown by any worker is rethrown on the caller's thread.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const auto n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace padic
