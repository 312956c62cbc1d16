#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace charvar {

/// Worker count: hardware concurrency, capped by the CHARVAR_THREADS
/// environment variable when set.
inline int worker_count() {
    int n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("CHARVAR_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

/// Applies fn(index) over [0, count) and collects results by index, so the
/// output order is independent of scheduling. fn must be safe to run
/// concurrently (each sample owns its random stream).
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
    std::vector<T> results(count);
    const int workers = worker_count();
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                results[i] = fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace charvar
