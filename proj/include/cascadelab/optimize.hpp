#pragma once

// Seed-selection strategies: uniform random baseline, greedy hill-climbing
// (Monte-Carlo marginal gains), and random-local-optimization (bounded-mass
// sub-networks around random roots; cost independent of network size).

#include "cascadelab/cascade.hpp"
#include "cascadelab/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cascadelab {

enum class Strategy { random, hill_climb, local };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SeedSelection {
    std::vector<uint32_t> seeds; // sorted, size k, distinct
    Strategy strategy = Strategy::random;
    // Abstract work counter: candidate-evaluations x trials_per_eval charged
    // to the k sub-problems retained in the answer. 0 for the random baseline
    // (the utility model charges that strategy one time unit separately).
    uint64_t cost_steps = 0;
    uint32_t k = 0;
    uint32_t local_mass = 0; // M, local strategy only
};

// k distinct uniformly random nodes; cost_steps = 0.
SeedSelection select_random(const Graph& g, uint32_t k, uint64_t rng_seed);

// Greedy: k rounds; each round scores every unselected candidate u by the
// Monte-Carlo mean influence of (current + u) over trials_per_eval shared
// static realizations and adds the argmax (ties -> smallest id).
// cost_steps = sum over rounds of candidates * trials_per_eval.
SeedSelection select_hill_climb(const Graph& g, uint32_t k, const CascadeParams& params,
                                uint32_t trials_per_eval, uint64_t rng_seed);

// Greedy with the exact-enumeration oracle instead of Monte-Carlo scoring
// (tiny graphs only; used to check the (1-1/e) guarantee).
SeedSelection select_hill_climb_exact(const Graph& g, uint32_t k, double p);

// Random-local-optimization: k random distinct roots; around each, grow a
// sub-network breadth-first by whole frontiers while |members| < M (the last
// frontier truncated smallest-id-first to exactly min(M, reachable)); score
// every member inside the induced sub-network (trials_per_eval trials, mean
// estimator) and keep the argmax. If a winner repeats an earlier winner the
// sub-network is re-rooted (<= 10 retries) and falls back to its root.
// cost_steps = sum of |members| * trials_per_eval over retained sub-networks
// (<= k*M*trials_per_eval for every n).
SeedSelection select_local(const Graph& g, uint32_t k, uint32_t M, const CascadeParams& params,
                           uint32_t trials_per_eval, uint64_t rng_seed);

} // namespace cascadelab
