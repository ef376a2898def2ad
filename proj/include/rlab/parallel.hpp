#pragma once

#include <cstddef>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace rlab::parallel {

// 0 means "pick something sensible for this machine".
inline unsigned effective_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n) on `threads` workers with a fixed block
// partition. Results must be written to per-index storage by the caller;
// the partition does not affect values.
template <class Fn>
void for_index(std::size_t n, unsigned threads, Fn&& fn) {
    threads = effective_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t block = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * block;
        const std::size_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

namespace detail {

template <class T, class Eval>
T pairwise_sum_range(std::size_t lo, std::size_t hi, const Eval& eval, int parallel_depth) {
    const std::size_t n = hi - lo;
    if (n == 1) return eval(lo);
    const std::size_t mid = lo + n / 2;
    if (parallel_depth > 0 && n >= 4) {
        auto right = std::async(std::launch::async, [&] {
            return pairwise_sum_range<T>(mid, hi, eval, parallel_depth - 1);
        });
        T left = pairwise_sum_range<T>(lo, mid, eval, parallel_depth - 1);
        return left + right.get();
    }
    T left = pairwise_sum_range<T>(lo, mid, eval, 0);
    T right = pairwise_sum_range<T>(mid, hi, eval, 0);
    return left + right;
}

}  // namespace detail

// Deterministic pairwise-tree sum of eval(0..n-1). The tree is split at
// midpoints, so the reduction order is a function of n alone; the thread
// count only decides how many top-level branches run concurrently.
template <class T, class Eval>
T pairwise_sum(std::size_t n, const Eval& eval, unsigned threads = 1) {
    if (n == 0) return T{};
    threads = effective_threads(threads);
    int depth = 0;
    while ((1u << depth) < threads && depth < 8) ++depth;
    return detail::pairwise_sum_range<T>(0, n, eval, depth);
}

}  // namespace rlab::parallel
