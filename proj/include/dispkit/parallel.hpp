#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dispkit {

// Runs fn(i) for every i in [0, count). With threads > 1 the index range is
// split into contiguous blocks, one per worker. Callers must let fn write
// only to per-index slots and aggregate afterwards; results are then
// independent of the worker count. The first exception thrown by any worker
// is rethrown after all workers join.
inline void parallel_for(std::uint64_t count, int threads,
                         const std::function<void(std::uint64_t)>& fn) {
    if (threads < 1) threads = 1;
    if (count == 0) return;
    if (static_cast<std::uint64_t>(threads) > count) threads = static_cast<int>(count);
    if (threads == 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::uint64_t base = count / threads;
    const std::uint64_t rem = count % threads;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::uint64_t lo = 0;
    for (int w = 0; w < threads; ++w) {
        const std::uint64_t size = base + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        const std::uint64_t hi = lo + size;
        pool.emplace_back([&fn, &first_error, &err_mu, lo, hi] {
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
        lo = hi;
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dispkit
