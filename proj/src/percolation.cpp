#include "cascadelab/percolation.hpp"
#include "cascadelab/cascade.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"

#include <bit>
#include <cmath>

namespace cascadelab {

double critical_point_from_degrees(std::span<const uint32_t> degrees) {
    if (degrees.empty()) throw config_error("critical point: empty degree sequence");
    uint64_t sum = 0, sum_sq = 0;
    for (const uint32_t d : degrees) {
        sum += d;
        sum_sq += static_cast<uint64_t>(d) * d;
    }
    const double k1 = static_cast<double>(sum) / degrees.size();
    const double k2 = static_cast<double>(sum_sq) / degrees.size();
    if (!(k2 > k1))
        throw config_error("critical point undefined: <k^2> <= <k> (no transition in range)");
    return k1 / (k2 - k1);
}

PercolationSummary measure_S(const Graph& g, double p, uint64_t trials, uint64_t rng_seed) {
    if (trials < 1) throw config_error("measure_S: trials must be >= 1");
    CascadeParams params;
    params.p = p;
    params.rng_seed = rng_seed;
    const CoinPlan plan = CoinPlan::make(g, params);
    const uint32_t n = g.node_count();
    if (n == 0) throw config_error("measure_S: empty graph");

    const unsigned workers = par::plan_workers(trials, 32);
    std::vector<uint64_t> largest_sums(workers, 0);
    std::vector<uint64_t> cluster_count_sums(workers, 0);

    par::parallel_for(trials, 32, [&](unsigned w, uint64_t begin, uint64_t end) {
        TrialScratch scratch;
        scratch.prepare(g);
        const auto edges = g.edges();
        for (uint64_t t = begin; t < end; ++t) {
            const uint64_t stream = rng::derive_stream(rng_seed, rng::tags::kPercolation, t);
            scratch.dsu.reset(n);
            plan.fill_mask(rng_seed, stream, scratch.mask.data());
            uint32_t largest = 1;
            uint32_t unions = 0;
            for (uint64_t mw = 0; mw < scratch.mask.size(); ++mw) {
                uint64_t bits = scratch.mask[mw];
                while (bits) {
                    const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                    bits &= bits - 1;
                    const Edge& e = edges[mw * 64 + b];
                    if (scratch.dsu.unite(e.u, e.v)) {
                        ++unions;
                        const uint32_t s = scratch.dsu.component_size(e.u);
                        if (s > largest) largest = s;
                    }
                }
            }
            largest_sums[w] += largest;
            cluster_count_sums[w] += n - unions;
        }
    });

    uint64_t largest_total = 0, clusters_total = 0;
    for (unsigned w = 0; w < workers; ++w) {
        largest_total += largest_sums[w];
        clusters_total += cluster_count_sums[w];
    }

    PercolationSummary out;
    out.p = p;
    out.largest_cluster_fraction =
        static_cast<double>(largest_total) / (static_cast<double>(trials) * n);
    out.mean_cluster_size =
        static_cast<double>(n) * static_cast<double>(trials) / static_cast<double>(clusters_total);
    out.trials = trials;
    return out;
}

double predict_random_influence_low(uint32_t k, uint64_t n) {
    if (k < 1 || n < 2) throw config_error("predict_random_influence_low: need k >= 1, n >= 2");
    return static_cast<double>(k) * std::log(static_cast<double>(n));
}

double predict_random_influence_high(uint32_t k, uint64_t n, double S) {
    if (k < 1) throw config_error("predict_random_influence_high: need k >= 1");
    if (!(S >= 0.0 && S <= 1.0)) throw config_error("predict_random_influence_high: S in [0,1]");
    const double miss = std::pow(1.0 - S, static_cast<double>(k));
    const double correction =
        static_cast<double>(k) * (1.0 - S) * std::log(static_cast<double>(n)) /
        static_cast<double>(n);
    return S * (1.0 - miss) + correction;
}

} // namespace cascadelab
