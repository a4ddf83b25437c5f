#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polybound {

/// Worker cap: POLYBOUND_THREADS when set, hardware concurrency otherwise.
inline unsigned thread_budget() {
    static unsigned budget = [] {
        if (const char* env = std::getenv("POLYBOUND_THREADS")) {
            long v = std::atol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1u;
    }();
    return budget;
}

/// Splits [0, count) into contiguous ranges, runs `worker(begin, end)` on
/// each, and returns the partial results in range order so reductions are
/// deterministic. Exact rational reductions are order independent anyway.
template <class R, class Worker>
std::vector<R> parallel_ranges(size_t count, const Worker& worker, size_t min_chunk = 256) {
    size_t max_parts = min_chunk ? (count + min_chunk - 1) / min_chunk : count;
    size_t parts = std::min<size_t>(thread_budget(), max_parts);
    if (parts <= 1) {
        std::vector<R> single;
        single.push_back(worker(size_t{0}, count));
        return single;
    }
    std::vector<R> results(parts);
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mu;
    for (size_t t = 0; t < parts; ++t) {
        size_t begin = count * t / parts;
        size_t end = count * (t + 1) / parts;
        threads.emplace_back([&, t, begin, end] {
            try {
                results[t] = worker(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

} // namespace polybound
