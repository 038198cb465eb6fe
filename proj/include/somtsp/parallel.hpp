#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace somtsp {

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. If any call throws,
/// the exception from the lowest failing index is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
    const auto worker_count = static_cast<std::size_t>(std::max(1u, jobs));

    if (worker_count == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::jthread> threads;
        for (std::size_t t = 0; t < std::min(worker_count, count); ++t) {
            threads.emplace_back(work);
        }
    }

    for (auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

} // namespace somtsp
