#ifndef MULTIBORD_UTIL_PARALLEL_HPP
#define MULTIBORD_UTIL_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace multibord {

// MULTIBORD_THREADS caps parallelism; defaults to the hardware count.
inline unsigned thread_budget(int requested = 0) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("MULTIBORD_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Deterministic parallel map: fn(i) produces a result vector per index;
// outputs are concatenated in index order regardless of scheduling.
template <class T, class Fn>
std::vector<T> parallel_flatmap(std::size_t n, Fn&& fn, int threads_requested = 0) {
    const unsigned threads = std::min<std::size_t>(thread_budget(threads_requested), n ? n : 1);
    std::vector<std::vector<T>> slots(n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) slots[i] = fn(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::atomic<bool> failed{false};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n || failed.load()) return;
                    try {
                        slots[i] = fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) err = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failed.load()) std::rethrow_exception(err);
    }
    std::vector<T> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

}  // namespace multibord

#endif
