#ifndef STPC_PARALLEL_HPP
#define STPC_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace stpc {

// Chunked parallel loop over [0, n).  Results must be written to
// index-addressed storage so the outcome is independent of scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                         unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw < 2 || n < 2) {
        body(0, n);
        return;
    }
    unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Deterministic reduction: per-chunk partial sums combined in chunk order.
template <class Fn>
double parallel_sum(std::size_t n, Fn&& term, unsigned max_threads = 0) {
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw < 2 || n < 1024) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += term(i);
        return s;
    }
    unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<double> partial(nthreads, 0.0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi] {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            partial[t] = s;
        });
    }
    for (auto& th : pool) th.join();
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

} // namespace stpc

#endif
