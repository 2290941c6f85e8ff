#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dioph {

inline int default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 2 : static_cast<int>(h);
}

// Runs fn(i) for i in [0, count) across a worker pool. fn must be safe to run
// concurrently for distinct i; the first exception thrown is rethrown on the
// calling thread after all workers drain.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 0) workers = default_workers();
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dioph
