#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zetaline {

inline int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 1;
}

/// Runs fn(chunk_index) for every index in [0, n_chunks) on up to `jobs`
/// threads. Callers write results into preallocated per-chunk slots and
/// merge them in chunk order afterwards, so the outcome does not depend
/// on the job count. jobs <= 0 selects the hardware default.
template <class Fn>
void run_chunks(std::int64_t n_chunks, int jobs, Fn&& fn) {
    if (jobs <= 0) jobs = default_jobs();
    if (n_chunks <= 0) return;
    if (jobs == 1 || n_chunks == 1) {
        for (std::int64_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= n_chunks || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    const int n_threads =
        static_cast<int>(std::min<std::int64_t>(jobs, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace zetaline
