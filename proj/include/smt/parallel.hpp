#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smt {

/// Number of worker threads used by parallel_for (0 = hardware concurrency).
void set_num_threads(unsigned n);
unsigned num_threads();

namespace detail {
/// True on threads spawned by parallel_for; nested calls then run inline.
bool& in_parallel_region();
}  // namespace detail

/// Runs body(i) for i in [0, count). Each index is visited exactly once and
/// bodies must only write to outputs owned by their index, so results do not
/// depend on the thread count. The first exception thrown by any body is
/// rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(num_threads(), count);
    if (workers <= 1 || detail::in_parallel_region()) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            detail::in_parallel_region() = true;
            try {
                // strided assignment balances work whose cost varies with i
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace smt
