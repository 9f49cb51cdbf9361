#pragma once

// Minimal deterministic work partitioning.
//
// parallel_for splits [0, n) into at most `workers` contiguous chunks and runs
// the body once per chunk. Because every random draw is addressed by (seed,
// stream, index) rather than by shared generator state, per-item results do
// not depend on the partition, and callers that reduce into per-worker integer
// accumulators and merge get thread-count-independent totals.
//
// Worker budget: CASCADE_LAB_THREADS caps the pool (unset/0 = hardware
// concurrency); set_thread_cap overrides the env var for the process.

#include <cstdint>
#include <functional>

namespace cascadelab::par {

// Effective cap (>= 1) after env var / override / hardware detection.
unsigned thread_cap();

// 0 restores env/hardware behaviour.
void set_thread_cap(unsigned cap);

// Number of chunks parallel_for would use for n items of the given grain.
unsigned plan_workers(uint64_t n, uint64_t grain);

// body(worker_index, begin, end); worker_index < plan_workers(n, grain).
// Runs inline when a single chunk suffices. Rethrows the first body exception.
void parallel_for(uint64_t n, uint64_t grain,
                  const std::function<void(unsigned, uint64_t, uint64_t)>& body);

} // namespace cascadelab::par
