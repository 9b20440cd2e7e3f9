#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace imetric {

/// Worker count: IMETRIC_THREADS if set, otherwise the hardware count.
inline unsigned thread_count() {
    if (const char* env = std::getenv("IMETRIC_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, n) into contiguous chunks, folds each with `step(acc, i)` and
/// merges the per-chunk accumulators left to right. Because every index is
/// processed independently and the merge order is fixed, the result is
/// bit-identical for any worker count.
template <class Acc, class Step, class Merge>
Acc parallel_reduce(std::uint64_t n, Acc init, Step step, Merge merge) {
    const unsigned workers = n < 4096 ? 1u : thread_count();
    if (workers <= 1) {
        Acc acc = init;
        for (std::uint64_t i = 0; i < n; ++i) step(acc, i);
        return acc;
    }
    std::vector<Acc> partial(workers, init);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) step(partial[w], i);
        });
    }
    for (auto& t : pool) t.join();
    Acc acc = init;
    for (unsigned w = 0; w < workers; ++w) merge(acc, partial[w]);
    return acc;
}

} // namespace imetric
