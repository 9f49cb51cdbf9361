#pragma once

// Monte-Carlo influence estimation plus an exhaustive-enumeration oracle for
// tiny graphs (exact expected influence, exact distribution, exact per-node
// influence).

#include "cascadelab/cascade.hpp"
#include "cascadelab/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cascadelab {

struct InfluenceEstimate {
    double median = 0.0;     // lower median (node count)
    double mean = 0.0;       // node count
    double std_error = 0.0;  // standard error of the mean
    uint64_t trials = 0;
    bool samples_kept = false;
    std::vector<uint64_t> histogram; // histogram[c] = #trials with influence c; empty unless kept
};

// `trials` independent realizations of the cascade given by params (static
// picture runs one union-find pass per trial; dynamic runs the stepped
// process). Median is the lower median. Deterministic for fixed
// params.rng_seed, independent of thread count.
InfluenceEstimate estimate(const Graph& g, std::span<const uint32_t> seeds,
                           const CascadeParams& params, uint64_t trials,
                           bool keep_histogram = false);

// Exhaustive enumeration over all 2^E edge subsets.
inline constexpr uint32_t kExactEnumerationMaxEdges = 25;

// Expected influence: sum over subsets of P(subset) * |union of seed clusters|.
// Uses stored edge probabilities when the graph has them, else uniform p.
double exact_influence(const Graph& g, std::span<const uint32_t> seeds, double p);

// Exact distribution of the influenced count: pmf[c] = P(influence == c),
// indexed 0..n (entries for impossible counts are 0).
std::vector<double> exact_influence_distribution(const Graph& g, std::span<const uint32_t> seeds,
                                                 double p);

// exact_influence({u}, p) for every node u, in one enumeration pass.
std::vector<double> exact_single_node_influences(const Graph& g, double p);

// argmax of exact single-node influence; ties broken by smallest id.
uint32_t best_single_node_exact(const Graph& g, double p);

// Oracle-agreement suite: random tiny graphs, random seed sets, p grid;
// each case checks |Monte-Carlo mean - exact| <= 3 * std_error.
struct OracleCase {
    std::string description;
    double exact;
    double mc_mean;
    double mc_std_error;
    bool pass;
};

struct OracleReport {
    uint32_t cases = 0;
    uint32_t failures = 0;
    std::vector<OracleCase> details;
};

OracleReport oracle_agreement_suite(uint64_t rng_seed, uint32_t graph_count = 20,
                                    uint64_t trials = 50000);

} // namespace cascadelab
