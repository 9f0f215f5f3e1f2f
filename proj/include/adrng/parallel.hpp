#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace adrng {

/// Runs f(i) for i in [0, n) on up to `jobs` threads. Tasks must be
/// independent; results keyed by index stay deterministic regardless of
/// scheduling.
template <typename F>
void parallel_for_index(std::size_t n, int jobs, F&& f) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> threads;
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    threads.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

} // namespace adrng
