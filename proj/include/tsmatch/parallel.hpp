// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tsmatch {

inline unsigned default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Calls fn(begin, end, worker) on contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count, so any reduction that
/// merges per-chunk results in chunk order is deterministic. The first
/// exception thrown by a worker is rethrown on the caller.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    const std::size_t chunks = std::min<std::size_t>(workers, n);
    if (chunks <= 1) {
        if (n > 0) fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < chunks; ++w) {
        const std::size_t begin = n * w / chunks;
        const std::size_t end = n * (w + 1) / chunks;
        threads.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace tsmatch
