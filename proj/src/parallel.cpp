#include "logsum/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace logsum {

namespace {

std::size_t initial_threads() {
    if (const char *env = std::getenv("LOGSUM_PROX_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                return static_cast<std::size_t>(v);
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<std::size_t> &thread_cap() {
    static std::atomic<std::size_t> cap{initial_threads()};
    return cap;
}

} // namespace

std::size_t max_threads() {
    return thread_cap().load();
}

void set_max_threads(std::size_t n) {
    thread_cap().store(std::max<std::size_t>(1, n));
}

void parallel_for(std::size_t n, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)> &body) {
    const std::size_t chunk = std::max<std::size_t>(1, min_chunk);
    const std::size_t workers = std::min(max_threads(), (n + chunk - 1) / chunk);
    if (workers <= 1) {
        if (n > 0)
            body(0, n);
        return;
    }
    const std::size_t per = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * per;
            const std::size_t e = std::min(n, b + per);
            if (b >= e)
                break;
            pool.emplace_back([&, w, b, e] {
                try {
                    body(b, e);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &err : errors)
        if (err)
            std::rethrow_exception(err);
}

} // namespace logsum
