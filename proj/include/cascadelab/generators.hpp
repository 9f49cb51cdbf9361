#pragma once

// Random-network generators. Every generator is a pure function of its
// parameters and the seed.

#include "cascadelab/graph.hpp"

#include <cstdint>
#include <string>

namespace cascadelab {

enum class NetworkFamily { er, small_world, config_power_law };

const char* family_name(NetworkFamily f);
NetworkFamily family_from_name(const std::string& name);

struct GeneratorSpec {
    NetworkFamily family = NetworkFamily::er;
    uint32_t n = 0;
    // er
    double mean_degree = 0.0;
    // small_world
    uint32_t ring_degree = 0;   // z, even
    double rewire_prob = 0.0;   // mu
    // config_power_law
    double power_law_alpha = 0.0;
    uint32_t min_degree = 0;    // kmin
};

// Erdos-Renyi G(n, p_edge) with p_edge = mean_degree / (n-1); sparse
// geometric-skip sampling, O(n + E). Requires 0 < mean_degree <= n-1.
Graph generate_er(uint32_t n, double mean_degree, uint64_t seed);

// Watts-Strogatz: ring lattice with z neighbours per node, then each edge's
// far endpoint is rewired with probability mu to a uniform node (self-loops
// and duplicates rejected with bounded retries; the original edge is kept if
// no slot is found). Edge count is exactly n*z/2.
Graph generate_small_world(uint32_t n, uint32_t z, double mu, uint64_t seed);

// Configuration model with degrees drawn from P(k) ~ k^-alpha truncated to
// [kmin, n-1]. Stub pairing rejects self-loops/multi-edges; an impasse
// triggers a re-shuffle restart, and exhausting the restart budget throws
// generation_error.
Graph generate_config_power_law(uint32_t n, double alpha, uint32_t kmin, uint64_t seed);

Graph generate(const GeneratorSpec& spec, uint64_t seed);

// Mean of the truncated power-law degree distribution used by the
// configuration model (analytic; no sampling).
double power_law_mean_degree(uint32_t n, double alpha, uint32_t kmin);

} // namespace cascadelab
