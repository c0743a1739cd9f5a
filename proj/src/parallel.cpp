#include "sngraph/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace sngraph {
namespace {

std::atomic<int> g_max_threads{0};

int env_thread_cap() {
    const char* env = std::getenv("SNGRAPH_THREADS");
    if (!env || !*env) return 0;
    try {
        return std::max(0, std::stoi(env));
    } catch (...) {
        return 0;
    }
}

int hardware_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int max_threads() {
    int n = g_max_threads.load();
    if (n <= 0) n = hardware_threads();
    if (const int cap = env_thread_cap(); cap > 0) n = std::min(n, cap);
    return std::max(1, n);
}

void set_max_threads(int n) { g_max_threads.store(std::max(0, n)); }

int resolve_worker_count(int requested) {
    int n = requested > 0 ? requested : hardware_threads();
    if (const int cap = env_thread_cap(); cap > 0) n = std::min(n, cap);
    return std::max(1, n);
}

void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (threads <= 0) threads = max_threads();
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (chunks <= 1) {
        fn(0, 0, count);
        return;
    }
    const std::size_t step = (count + chunks - 1) / chunks;
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * step;
        const std::size_t end = std::min(count, begin + step);
        if (begin >= end) break;
        workers.emplace_back([&fn, c, begin, end] { fn(static_cast<int>(c), begin, end); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace sngraph
