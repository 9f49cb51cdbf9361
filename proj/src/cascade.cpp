#include "cascadelab/cascade.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/kernels.hpp"
#include "cascadelab/rng.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace cascadelab {

void validate_seeds(const Graph& g, std::span<const uint32_t> seeds) {
    if (seeds.empty()) throw config_error("seed set must be non-empty");
    std::vector<uint32_t> sorted(seeds.begin(), seeds.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw config_error("seed set contains a repeated node");
    if (sorted.back() >= g.node_count())
        throw config_error("seed id " + std::to_string(sorted.back()) + " out of range (n=" +
                           std::to_string(g.node_count()) + ")");
}

void validate_params(const CascadeParams& params) {
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw config_error("p must be in [0,1]");
    if (!(params.noise_sigma >= 0.0))
        throw config_error("noise_sigma must be >= 0");
}

Graph sample_edge_probabilities(const Graph& g, double p, double noise_sigma, uint64_t rng_seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("p must be in [0,1]");
    if (!(noise_sigma >= 0.0)) throw config_error("noise_sigma must be >= 0");
    std::vector<double> probs(g.edge_count(), p);
    if (noise_sigma > 0.0) {
        rng::CounterRng gen(rng_seed, rng::derive_stream(rng_seed, rng::tags::kEdgeNoise, 0));
        for (double& pe : probs) {
            double draw = p + noise_sigma * gen.next_gaussian();
            // truncate by re-draw; the cap is unreachable for sane sigma
            for (int attempt = 0; (draw < 0.0 || draw > 1.0) && attempt < 64; ++attempt)
                draw = p + noise_sigma * gen.next_gaussian();
            pe = std::clamp(draw, 0.0, 1.0);
        }
    }
    return g.with_edge_probabilities(std::move(probs));
}

CoinPlan CoinPlan::make(const Graph& g, const CascadeParams& params) {
    validate_params(params);
    CoinPlan plan;
    plan.edge_count_ = g.edge_count();
    const Graph* src = &g;
    Graph noisy;
    if (!g.has_edge_probabilities() && params.noise_sigma > 0.0) {
        noisy = sample_edge_probabilities(g, params.p, params.noise_sigma, params.rng_seed);
        src = &noisy;
    }
    if (src->has_edge_probabilities()) {
        plan.thresholds_.reserve(src->edge_count());
        for (double pe : src->edge_probabilities()) {
            const uint64_t t = rng::bernoulli_threshold(pe);
            // 32-bit lanes cannot express 2^32; p_uv = 1 becomes 1 - 2^-32
            plan.thresholds_.push_back(
                static_cast<uint32_t>(t > 0xFFFFFFFFull ? 0xFFFFFFFFull : t));
        }
    } else {
        plan.uniform_threshold_ = rng::bernoulli_threshold(params.p);
    }
    return plan;
}

void CoinPlan::fill_mask(uint64_t seed, uint64_t stream, uint64_t* out) const {
    if (per_edge())
        kernels::bernoulli_mask_per_item(seed, stream, edge_count_, thresholds_.data(), out);
    else
        kernels::bernoulli_mask(seed, stream, edge_count_, uniform_threshold_, out);
}

bool CoinPlan::coin(uint64_t seed, uint64_t stream, uint64_t index, uint32_t edge) const {
    if (per_edge())
        return rng::draw_u32(seed, stream, index) < thresholds_[edge];
    if (uniform_threshold_ >= (1ull << 32)) return true;
    return rng::draw_u32(seed, stream, index) < static_cast<uint32_t>(uniform_threshold_);
}

void TrialScratch::prepare(const Graph& g) {
    if (dsu.node_count() != g.node_count()) dsu.reset(g.node_count());
    mask.assign((g.edge_count() + 63) / 64, 0);
    if (stamp.size() != g.node_count()) {
        stamp.assign(g.node_count(), 0);
        epoch = 0;
    }
    frontier.reserve(g.node_count());
    next_frontier.reserve(g.node_count());
}

namespace {

// next epoch value, recycling the stamp array on wrap
inline uint32_t bump_epoch(TrialScratch& s) {
    if (++s.epoch == 0) {
        std::fill(s.stamp.begin(), s.stamp.end(), 0u);
        s.epoch = 1;
    }
    return s.epoch;
}

} // namespace

StaticTrialResult run_static_trial(const Graph& g, std::span<const uint32_t> seeds,
                                   const CoinPlan& plan, uint64_t seed, uint64_t stream,
                                   TrialScratch& scratch) {
    const uint32_t n = g.node_count();
    scratch.dsu.reset(n);
    plan.fill_mask(seed, stream, scratch.mask.data());

    uint32_t largest = n ? 1 : 0;
    const auto edges = g.edges();
    for (uint64_t w = 0; w < scratch.mask.size(); ++w) {
        uint64_t bits = scratch.mask[w];
        while (bits) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
            bits &= bits - 1;
            const Edge& e = edges[w * 64 + b];
            if (scratch.dsu.unite(e.u, e.v))
                largest = std::max(largest, scratch.dsu.component_size(e.u));
        }
    }

    const uint32_t epoch = bump_epoch(scratch);
    uint32_t influenced = 0;
    for (const uint32_t s : seeds) {
        const uint32_t r = scratch.dsu.find(s);
        if (scratch.stamp[r] != epoch) {
            scratch.stamp[r] = epoch;
            influenced += scratch.dsu.component_size(r);
        }
    }
    return {influenced, largest};
}

uint32_t run_dynamic_trial(const Graph& g, std::span<const uint32_t> seeds,
                           const CoinPlan& plan, uint64_t seed, uint64_t stream,
                           TrialScratch& scratch, uint32_t* steps_out) {
    const uint32_t epoch = bump_epoch(scratch);
    scratch.frontier.clear();
    scratch.next_frontier.clear();
    uint32_t count = 0;
    for (const uint32_t s : seeds) {
        if (scratch.stamp[s] != epoch) {
            scratch.stamp[s] = epoch;
            scratch.frontier.push_back(s);
            ++count;
        }
    }
    uint32_t steps = 0;
    uint64_t draw_index = 0;
    while (!scratch.frontier.empty()) {
        scratch.next_frontier.clear();
        for (const uint32_t u : scratch.frontier) {
            const auto nbrs = g.neighbors(u);
            const auto eids = g.incident_edges(u);
            for (size_t i = 0; i < nbrs.size(); ++i) {
                const uint32_t v = nbrs[i];
                if (scratch.stamp[v] == epoch) continue; // already influenced
                if (plan.coin(seed, stream, draw_index++, eids[i])) {
                    scratch.stamp[v] = epoch;
                    scratch.next_frontier.push_back(v);
                    ++count;
                }
            }
        }
        if (!scratch.next_frontier.empty()) ++steps;
        std::swap(scratch.frontier, scratch.next_frontier);
    }
    if (steps_out) *steps_out = steps;
    return count;
}

namespace {

CascadeOutcome finish_outcome(const Graph& g, TrialScratch& scratch, bool from_static) {
    CascadeOutcome out;
    const uint32_t n = g.node_count();
    const uint32_t epoch = scratch.epoch;
    out.influenced.reserve(64);
    if (from_static) {
        // influenced = nodes whose cluster root carries the seed stamp
        for (uint32_t u = 0; u < n; ++u)
            if (scratch.stamp[scratch.dsu.find(u)] == epoch) out.influenced.push_back(u);
    } else {
        for (uint32_t u = 0; u < n; ++u)
            if (scratch.stamp[u] == epoch) out.influenced.push_back(u);
    }
    out.influenced_count = static_cast<uint32_t>(out.influenced.size());
    return out;
}

} // namespace

CascadeOutcome run_static(const Graph& g, std::span<const uint32_t> seeds,
                          const CascadeParams& params) {
    validate_seeds(g, seeds);
    if (params.picture != Picture::static_percolation)
        throw config_error("run_static called with dynamic-picture params");
    const CoinPlan plan = CoinPlan::make(g, params);
    TrialScratch scratch;
    scratch.prepare(g);
    const uint64_t stream = rng::derive_stream(params.rng_seed, rng::tags::kEstimateTrial, 0);
    const StaticTrialResult r =
        run_static_trial(g, seeds, plan, params.rng_seed, stream, scratch);
    CascadeOutcome out = finish_outcome(g, scratch, true);
    out.largest_cluster_size = r.largest_cluster_size;
    return out;
}

CascadeOutcome run_dynamic(const Graph& g, std::span<const uint32_t> seeds,
                           const CascadeParams& params) {
    validate_seeds(g, seeds);
    if (params.picture != Picture::dynamic_cascade)
        throw config_error("run_dynamic called with static-picture params");
    const CoinPlan plan = CoinPlan::make(g, params);
    TrialScratch scratch;
    scratch.prepare(g);
    const uint64_t stream = rng::derive_stream(params.rng_seed, rng::tags::kDynamicTrial, 0);
    uint32_t steps = 0;
    run_dynamic_trial(g, seeds, plan, params.rng_seed, stream, scratch, &steps);
    CascadeOutcome out = finish_outcome(g, scratch, false);
    out.steps = steps;
    return out;
}

} // namespace cascadelab
