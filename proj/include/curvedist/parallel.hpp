#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace curvedist {

/// Worker cap for data-parallel scans; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

namespace detail {
/// Set inside worker threads; nested parallel_for calls then run serially.
inline thread_local bool in_worker = false;
} // namespace detail

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index is
/// visited exactly once, so writing into preallocated slots keeps results
/// independent of the worker count. The first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t n, Body &&body) {
    const std::size_t workers = detail::in_worker ? 1 : std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            detail::in_worker = true;
            try {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(n, begin + chunk);
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace curvedist
