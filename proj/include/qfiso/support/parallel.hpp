#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qfiso {

/// Thread count from QFISO_THREADS, or 1 when unset or invalid.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("QFISO_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return 1;
}

/// Splits [0, count) into contiguous blocks, runs `work(begin, end)` on up to
/// `threads` workers and returns the block results in ascending block order.
/// The block layout depends only on `count`, so an order-respecting merge of
/// the results is identical for every thread count.
template <typename Work>
auto parallel_blocks(std::uint64_t count, unsigned threads, Work&& work)
    -> std::vector<decltype(work(std::uint64_t{}, std::uint64_t{}))> {
    using Result = decltype(work(std::uint64_t{}, std::uint64_t{}));
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<Result> results(blocks);
    threads = std::max(1u, threads);
    if (threads == 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            results[b] = work(b * kBlock, std::min(count, (b + 1) * kBlock));
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint64_t b = t; b < blocks; b += threads)
                    results[b] = work(b * kBlock, std::min(count, (b + 1) * kBlock));
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace qfiso
