#pragma once

// Analytic percolation predictions and the direct largest-cluster measurement.

#include "cascadelab/graph.hpp"

#include <cstdint>
#include <span>

namespace cascadelab {

struct PercolationSummary {
    double p = 0.0;
    double largest_cluster_fraction = 0.0; // S, mean over trials
    double mean_cluster_size = 0.0;        // n * trials / total cluster count
    uint64_t trials = 0;
};

// p_c = <k> / (<k^2> - <k>) from the empirical degree sequence.
// Throws config_error when <k^2> <= <k> (no transition in range).
double critical_point_from_degrees(std::span<const uint32_t> degrees);

// Mean largest-cluster fraction S at bond-occupation probability p,
// measured over `trials` independent static realizations.
PercolationSummary measure_S(const Graph& g, double p, uint64_t trials, uint64_t rng_seed);

// Low-phase order-of-magnitude prediction for random seeding: k * ln(n)
// (k clusters of O(log n) nodes). A scale, not a sharp value.
double predict_random_influence_low(uint32_t k, uint64_t n);

// High-phase prediction, fraction-of-n units:
//   f = S * (1 - (1-S)^k) + k * (1-S) * ln(n) / n
double predict_random_influence_high(uint32_t k, uint64_t n, double S);

} // namespace cascadelab
