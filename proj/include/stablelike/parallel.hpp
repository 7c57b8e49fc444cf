#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace stablelike {

// Deterministic parallel map: body(i) writes only to slot i of preallocated
// storage, so the result is independent of scheduling. threads <= 0 picks a
// small automatic worker count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
    int t = threads > 0
                ? threads
                : static_cast<int>(std::min<unsigned>(
                      4, std::max<unsigned>(1, std::thread::hardware_concurrency())));
    t = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), n));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex mu;
    for (int w = 0; w < t; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < n;
                     i += static_cast<std::size_t>(t))
                    body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : workers) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace stablelike
