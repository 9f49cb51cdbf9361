#pragma once

// One realization of influence spreading, in either picture:
//   dynamic  - time-stepped cascade; every newly active node gets one shot at
//              each neighbour, then deactivates.
//   static   - all edge coins tossed up front; influenced set = union of the
//              percolation clusters containing the seeds.
// The two pictures produce identically distributed influenced sets.

#include "cascadelab/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cascadelab {

enum class Picture { dynamic_cascade, static_percolation };

struct CascadeParams {
    double p = 0.0;           // uniform contagion probability
    double noise_sigma = 0.0; // stddev of per-edge Gaussian noise (0 = uniform model)
    Picture picture = Picture::static_percolation;
    uint64_t rng_seed = 0;
};

struct CascadeOutcome {
    std::vector<uint32_t> influenced; // sorted, includes seeds
    uint32_t influenced_count = 0;
    uint32_t steps = 0;                // dynamic picture: rounds with >=1 activation
    uint32_t largest_cluster_size = 0; // static picture: max percolation cluster
};

// Draw p_uv ~ Normal(p, noise_sigma^2) truncated to [0,1] by re-drawing, once
// per edge; the returned graph carries the assignment for all later
// realizations (the noisy probabilities are a property of the network).
Graph sample_edge_probabilities(const Graph& g, double p, double noise_sigma, uint64_t rng_seed);

// Single full realizations (trial 0 of the params seed).
CascadeOutcome run_dynamic(const Graph& g, std::span<const uint32_t> seeds,
                           const CascadeParams& params);
CascadeOutcome run_static(const Graph& g, std::span<const uint32_t> seeds,
                          const CascadeParams& params);

// ---- bulk-trial machinery (used by estimators and optimizers) ----

// Edge-coin thresholds resolved once per (graph, params):
//  - stored edge probabilities (noisy model) -> one 32-bit threshold per edge;
//  - params.noise_sigma > 0 on a plain graph -> probabilities drawn here once
//    (quenched), seeded from params.rng_seed;
//  - otherwise a single uniform threshold.
class CoinPlan {
  public:
    static CoinPlan make(const Graph& g, const CascadeParams& params);

    bool per_edge() const { return !thresholds_.empty(); }
    uint64_t uniform_threshold() const { return uniform_threshold_; }
    uint32_t edge_count() const { return edge_count_; }

    // Open-edge bitmask for one trial: bit e = edge e transmits.
    // out must hold (edge_count + 63) / 64 words.
    void fill_mask(uint64_t seed, uint64_t stream, uint64_t* out) const;

    // Lazy single-coin draw (dynamic picture), draw index = caller-chosen.
    bool coin(uint64_t seed, uint64_t stream, uint64_t index, uint32_t edge) const;

  private:
    uint64_t uniform_threshold_ = 0;
    std::vector<uint32_t> thresholds_; // empty in uniform mode
    uint32_t edge_count_ = 0;
};

// Reusable per-worker buffers for running many trials on one graph.
struct TrialScratch {
    DisjointSet dsu;
    std::vector<uint64_t> mask;
    std::vector<uint32_t> stamp; // epoch-stamped "influenced" marks (dynamic)
    std::vector<uint32_t> frontier;
    std::vector<uint32_t> next_frontier;
    uint32_t epoch = 0;

    void prepare(const Graph& g);
};

struct StaticTrialResult {
    uint32_t influenced_count;
    uint32_t largest_cluster_size;
};

// One static-picture trial; scratch.dsu holds the clusters on return.
StaticTrialResult run_static_trial(const Graph& g, std::span<const uint32_t> seeds,
                                   const CoinPlan& plan, uint64_t seed, uint64_t stream,
                                   TrialScratch& scratch);

// One dynamic-picture trial; returns influenced count, sets steps if non-null.
uint32_t run_dynamic_trial(const Graph& g, std::span<const uint32_t> seeds,
                           const CoinPlan& plan, uint64_t seed, uint64_t stream,
                           TrialScratch& scratch, uint32_t* steps_out = nullptr);

void validate_seeds(const Graph& g, std::span<const uint32_t> seeds);
void validate_params(const CascadeParams& params);

} // namespace cascadelab
