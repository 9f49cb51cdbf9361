#include "cascadelab/parallel.hpp"
#include "cascadelab/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace cascadelab::par {

namespace {

std::atomic<unsigned> g_cap_override{0};

unsigned env_cap() {
    const char* env = std::getenv("CASCADE_LAB_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
        throw config_error(std::string("CASCADE_LAB_THREADS must be a non-negative integer (got '") +
                           env + "')");
    return static_cast<unsigned>(v);
}

} // namespace

unsigned thread_cap() {
    const unsigned forced = g_cap_override.load(std::memory_order_relaxed);
    unsigned cap = forced ? forced : env_cap();
    if (cap == 0) cap = std::thread::hardware_concurrency();
    return cap == 0 ? 1 : cap;
}

void set_thread_cap(unsigned cap) { g_cap_override.store(cap, std::memory_order_relaxed); }

unsigned plan_workers(uint64_t n, uint64_t grain) {
    if (n == 0) return 0;
    if (grain == 0) grain = 1;
    const uint64_t by_grain = (n + grain - 1) / grain;
    const uint64_t cap = thread_cap();
    const uint64_t w = by_grain < cap ? by_grain : cap;
    return static_cast<unsigned>(w < 1 ? 1 : w);
}

void parallel_for(uint64_t n, uint64_t grain,
                  const std::function<void(unsigned, uint64_t, uint64_t)>& body) {
    const unsigned workers = plan_workers(n, grain);
    if (workers == 0) return;
    if (workers == 1) {
        body(0, 0, n);
        return;
    }
    const uint64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto run = [&](unsigned w) {
        const uint64_t begin = w * chunk;
        const uint64_t end = begin + chunk < n ? begin + chunk : n;
        if (begin >= end) return;
        try {
            body(w, begin, end);
        } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
        }
    };

    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cascadelab::par
