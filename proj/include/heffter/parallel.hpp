#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace heffter {

/// Worker count: HEFFTER_THREADS when set to a positive integer, else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HEFFTER_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, total) into contiguous chunks, runs `work(begin, end, out)` on each,
/// and concatenates the per-chunk outputs in chunk order. The result does not
/// depend on the number of workers or on scheduling.
template <class T, class Work>
std::vector<T> parallel_collect(std::uint64_t total, Work&& work) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(total, 1)));
    std::vector<std::vector<T>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;
    auto run = [&](unsigned w) {
        try {
            const std::uint64_t b = std::min<std::uint64_t>(total, w * chunk);
            const std::uint64_t e = std::min<std::uint64_t>(total, b + chunk);
            work(b, e, parts[w]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

} // namespace heffter
