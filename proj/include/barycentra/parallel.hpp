#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>

namespace barycentra {

// Serial is the reference path; Parallel distributes independent trials over
// OpenMP threads and must return exactly what Serial returns.
enum class Execution { Serial, Parallel };

// Smallest index in [0, n) for which `fails(i)` is true. Exceptions thrown by
// trials are rethrown after the loop (lowest index wins).
template <class Pred>
std::optional<std::size_t> find_first(std::size_t n, Pred&& fails, Execution exec) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i)
            if (fails(i)) return i;
        return std::nullopt;
    }

    std::atomic<std::size_t> best{n};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = n;

    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (i > best.load(std::memory_order_relaxed)) continue;
        try {
            if (fails(i)) {
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    }
    if (error && error_index <= best.load()) std::rethrow_exception(error);
    if (best.load() < n) return best.load();
    return std::nullopt;
}

}  // namespace barycentra
