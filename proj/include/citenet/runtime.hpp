#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace citenet::runtime {

namespace detail {
inline int& cap_storage() {
    static int cap = 0; // 0 = not yet resolved
    return cap;
}
} // namespace detail

// Maximum number of worker threads internal loops may use. Resolved once from
// CITENET_THREADS (falling back to hardware concurrency), overridable for
// tests via set_thread_cap.
inline int thread_cap() {
    int& cap = detail::cap_storage();
    if (cap == 0) {
        int resolved = 0;
        if (const char* env = std::getenv("CITENET_THREADS")) {
            resolved = std::atoi(env);
        }
        if (resolved <= 0) {
            resolved = static_cast<int>(std::thread::hardware_concurrency());
        }
        cap = std::max(1, resolved);
    }
    return cap;
}

inline void set_thread_cap(int cap) {
    detail::cap_storage() = std::max(1, cap);
}

// Splits [0, n) into contiguous chunks, runs fn(chunk_index, begin, end) on up
// to thread_cap() threads. Callers are responsible for keeping the combined
// result independent of the chunking (integer accumulation into per-chunk
// buffers merged in chunk order qualifies; floating-point sums do not).
template <typename Fn>
inline std::size_t for_each_chunk(std::size_t n, Fn&& fn) {
    std::size_t n_chunks = static_cast<std::size_t>(thread_cap());
    n_chunks = std::max<std::size_t>(1, std::min(n_chunks, n == 0 ? 1 : n));
    if (n_chunks == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return 1;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_chunks);
    std::size_t per = n / n_chunks;
    std::size_t extra = n % n_chunks;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        std::size_t len = per + (c < extra ? 1 : 0);
        workers.emplace_back([&fn, c, begin, len] { fn(c, begin, begin + len); });
        begin += len;
    }
    for (auto& w : workers) w.join();
    return n_chunks;
}

} // namespace citenet::runtime
