#ifndef MUTAGEN_PARALLEL_HPP
#define MUTAGEN_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace mutagen {

/// Runs fn(i) for i in [0, n). Workers write to disjoint indices only, so the
/// result is identical to the sequential loop.
template <typename Fn>
void parallel_for(size_t n, bool parallel, Fn&& fn) {
    if (!parallel || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 2;
    if (workers > n) workers = n;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace mutagen

#endif
