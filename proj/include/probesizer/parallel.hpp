#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace probesizer {

// Worker count for parallel sections. PROBE_SIZER_THREADS caps it; values
// below 1 (or unparsable) fall back to the hardware count.
inline unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) {
        hw = 1;
    }
    if (const char* env = std::getenv("PROBE_SIZER_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 1) {
            return static_cast<unsigned>(std::min<long>(parsed, 256));
        }
    }
    return hw;
}

// Runs fn(begin, end) over a static block partition of [0, count).
// Callers must write results into index-addressed slots so the outcome is
// independent of the thread count and schedule.
inline void parallel_for(size_t count, const std::function<void(size_t, size_t)>& fn) {
    if (count == 0) {
        return;
    }
    const size_t workers = std::min<size_t>(thread_cap(), count);
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (size_t t = 0; t < workers; ++t) {
        const size_t begin = count * t / workers;
        const size_t end = count * (t + 1) / workers;
        threads.emplace_back([&, t, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& thread : threads) {
        thread.join();
    }
    for (auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

}  // namespace probesizer
