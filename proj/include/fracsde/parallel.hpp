#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fracsde {

inline std::size_t resolve_jobs(std::size_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Static block partition of [0, count) across `jobs` threads. Work items must
// be independent; results must not depend on the split (the counter-based RNG
// guarantees this for simulation loops).
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    jobs = std::min(resolve_jobs(jobs), count == 0 ? std::size_t{1} : count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::size_t chunk = (count + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace fracsde
