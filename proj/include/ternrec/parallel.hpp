#pragma once

// Minimal fork-join helper over an index range.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ternrec/errors.hpp"

namespace ternrec {

/// Explicit request, else TERNARY_THREADS, else hardware concurrency (at least 1).
inline unsigned resolve_thread_count(std::optional<unsigned> requested = std::nullopt) {
    if (requested) {
        if (*requested == 0) throw InvalidInput("thread count must be positive");
        return *requested;
    }
    if (const char* env = std::getenv("TERNARY_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v <= 0) throw InvalidInput(std::string("bad TERNARY_THREADS value: ") + env);
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [begin, end), handing out chunks of indices on demand.
/// The first exception thrown by any worker is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads, Fn&& fn, std::uint64_t chunk = 64) {
    if (end <= begin) return;
    const std::uint64_t total = end - begin;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), (total + chunk - 1) / chunk));
    if (threads == 1) {
        for (std::uint64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{begin};
    std::atomic<bool> failed{false};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                while (!failed.load(std::memory_order_relaxed)) {
                    const std::uint64_t lo = next.fetch_add(chunk);
                    if (lo >= end) break;
                    const std::uint64_t hi = std::min(end, lo + chunk);
                    for (std::uint64_t i = lo; i < hi; ++i) fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
                failed = true;
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ternrec
