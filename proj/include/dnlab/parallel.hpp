#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dnlab {

// Thread count: hardware concurrency capped by DNLAB_THREADS.
inline unsigned thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("DNLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && (unsigned)v < hw) hw = (unsigned)v;
    }
    return hw;
}

// Deterministic parallel map: body(i) writes only to slot i of its own
// output; reduction order is up to the caller, so results are identical
// for any thread count.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    unsigned threads = thread_count();
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) break;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace dnlab
