#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kmlab {

// Worker cap: KM_LAB_THREADS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("KM_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
    }
    return hw;
}

// Static-chunk parallel loop. The body must write only to its own index's
// slots so results do not depend on the thread count; reductions happen
// serially afterwards in index order.
template <class Body>
void parallel_for(std::size_t n, const Body& body) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        threads.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

} // namespace kmlab
