#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pathbudget::detail {

// PATHBUDGET_THREADS overrides the worker count; unset or unparseable means
// all hardware threads.
[[nodiscard]] inline unsigned env_thread_override() noexcept {
    const char* text = std::getenv("PATHBUDGET_THREADS");
    if (text == nullptr || *text == '\0') return 0;
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(text, &end, 10);
    if (end == text || *end != '\0' || parsed == 0 || parsed > 4096) return 0;
    return static_cast<unsigned>(parsed);
}

[[nodiscard]] inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested > 0) return requested;
    if (const unsigned from_env = env_thread_override(); from_env > 0) return from_env;
    const unsigned hardware = std::thread::hardware_concurrency();
    return hardware > 0 ? hardware : 1;
}

// Runs body(i) for i in [0, count) over contiguous blocks. Bodies must write
// only to their own index slots; under that contract the outcome is identical
// for every worker count. The first exception thrown by a worker is rethrown
// after all workers join.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, unsigned threads = 0) {
    const std::size_t worker_count = std::min<std::size_t>(resolve_threads(threads), count);
    if (worker_count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr error;
    {
        std::vector<std::jthread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            const std::size_t begin = count * w / worker_count;
            const std::size_t end = count * (w + 1) / worker_count;
            workers.emplace_back([&body, &error_mutex, &error, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) body(i);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace pathbudget::detail
