#ifndef LCL_PARALLEL_HPP
#define LCL_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace lcl {

// Static block partition of [0,n) over `threads` workers.  Each index is
// processed exactly once and results must be written to per-index slots;
// combined with pairwise_sum below this makes reductions independent of the
// worker count.
template <class F>
void parallel_for(std::int64_t n, int threads, F&& body) {
    if (n <= 0) return;
    if (threads < 1) threads = 1;
    if (threads == 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::int64_t nt = std::min<std::int64_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (std::int64_t t = 0; t < nt; ++t) {
        const std::int64_t lo = n * t / nt;
        const std::int64_t hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &body] {
            for (std::int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Fixed balanced-tree summation; the result depends only on the element
// order, never on how the elements were produced.
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return T{};
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v, 0, v.size());
}

}  // namespace lcl

#endif
