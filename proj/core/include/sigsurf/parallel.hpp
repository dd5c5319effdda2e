#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sigsurf {

// Runs f(i) for i in [0, n) on a few threads. Results must be written to
// per-index slots by the caller, which keeps every reduction order fixed.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lk(mu);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Pairwise summation in index order: deterministic and well-conditioned.
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi, const T& zero) {
    if (hi <= lo) return zero;
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid, zero) + pairwise_sum(v, mid, hi, zero);
}

template <class T>
T pairwise_sum(const std::vector<T>& v, const T& zero) {
    return pairwise_sum(v, 0, v.size(), zero);
}

}  // namespace sigsurf
