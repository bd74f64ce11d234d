#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noisefilter {

/// Parallelism budget handed down from the composition root. Work is split
/// into indexed tasks whose results land in per-index slots, so output never
/// depends on the thread count.
class Executor {
public:
    explicit Executor(std::size_t threads = 1) : threads_(std::max<std::size_t>(threads, 1)) {}

    static Executor hardware() {
        return Executor(std::max(1u, std::thread::hardware_concurrency()));
    }

    std::size_t threads() const noexcept { return threads_; }

    /// Calls fn(i) for every i in [0, count). The first exception thrown by a
    /// task is rethrown after all workers have joined.
    template <typename Fn>
    void for_each_index(std::size_t count, Fn&& fn) const {
        const std::size_t workers = std::min(threads_, count);
        if (workers <= 1) {
            for (std::size_t i = 0; i < count; ++i) fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(count, std::memory_order_relaxed);
                    return;
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers - 1);
            for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
            work();
        }
        if (failure) std::rethrow_exception(failure);
    }

    /// Splits [0, count) into fixed blocks of `block` items (independent of
    /// thread count) and calls fn(begin, end) per block.
    template <typename Fn>
    void for_each_block(std::size_t count, std::size_t block, Fn&& fn) const {
        const std::size_t blocks = (count + block - 1) / block;
        for_each_index(blocks, [&](std::size_t b) {
            fn(b * block, std::min(count, (b + 1) * block));
        });
    }

private:
    std::size_t threads_;
};

}  // namespace noisefilter
