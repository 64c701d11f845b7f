#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bijumble
{
    /// Process-wide default worker count (initially 1).
    auto default_workers() -> unsigned;
    auto set_default_workers(unsigned workers) -> void;

    /// Runs body(chunk) for every chunk in [0, chunks) on `workers` threads
    /// and returns the per-chunk results in chunk order. Callers merge the
    /// results sequentially, so output never depends on the worker count.
    /// Exceptions thrown by a chunk are rethrown (lowest chunk first).
    template <typename Result_, typename Body_>
    auto run_chunks(std::size_t chunks, unsigned workers, Body_ && body) -> std::vector<Result_>
    {
        std::vector<Result_> results(chunks);
        std::vector<std::exception_ptr> errors(chunks);
        if (workers == 0)
            workers = default_workers();
        workers = unsigned(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));

        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t c ; (c = next.fetch_add(1)) < chunks ; ) {
                try {
                    results[c] = body(c);
                }
                catch (...) {
                    errors[c] = std::current_exception();
                }
            }
        };

        if (workers <= 1)
            work();
        else {
            std::vector<std::thread> threads;
            for (unsigned t = 0 ; t < workers ; ++t)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
        }

        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);
        return results;
    }

    /// Splits [0, n) into `chunks` contiguous ranges; chunk c is
    /// [bounds(c), bounds(c+1)).
    inline auto chunk_bound(std::size_t n, std::size_t chunks, std::size_t c) -> std::size_t
    {
        return (n / chunks) * c + std::min(c, n % chunks);
    }
}
