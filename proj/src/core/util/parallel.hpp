#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace dhms::util {

// Runs fn(i) for i in [0, n). With jobs <= 1 this is a plain loop; otherwise
// indices are striped over worker threads. Callers must make fn(i) touch only
// slot i of any shared output so results are identical regardless of jobs.
template <typename Fn>
void parallel_for(unsigned jobs, std::size_t n, Fn&& fn) {
    if (n == 0) return;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace dhms::util
