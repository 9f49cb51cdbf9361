#include "cascadelab/influence.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascadelab {

InfluenceEstimate estimate(const Graph& g, std::span<const uint32_t> seeds,
                           const CascadeParams& params, uint64_t trials, bool keep_histogram) {
    validate_seeds(g, seeds);
    validate_params(params);
    if (trials < 1) throw config_error("estimate: trials must be >= 1");

    const CoinPlan plan = CoinPlan::make(g, params);
    const uint32_t n = g.node_count();
    const bool dynamic = params.picture == Picture::dynamic_cascade;
    const uint64_t seed = params.rng_seed;

    // per-worker integer histograms, merged after the join: totals are
    // independent of the partition, so thread count never changes the result
    const unsigned workers = par::plan_workers(trials, 64);
    std::vector<std::vector<uint64_t>> hists(workers, std::vector<uint64_t>(n + 1, 0));

    par::parallel_for(trials, 64, [&](unsigned w, uint64_t begin, uint64_t end) {
        TrialScratch scratch;
        scratch.prepare(g);
        auto& hist = hists[w];
        for (uint64_t t = begin; t < end; ++t) {
            const uint64_t stream = rng::derive_stream(seed, rng::tags::kEstimateTrial, t);
            const uint32_t count =
                dynamic ? run_dynamic_trial(g, seeds, plan, seed, stream, scratch)
                        : run_static_trial(g, seeds, plan, seed, stream, scratch).influenced_count;
            ++hist[count];
        }
    });

    std::vector<uint64_t>& hist = hists[0];
    for (unsigned w = 1; w < workers; ++w)
        for (uint32_t c = 0; c <= n; ++c) hist[c] += hists[w][c];

    // lower median: smallest count whose cumulative frequency reaches
    // rank = floor((trials+1)/2)
    const uint64_t rank = (trials + 1) / 2;
    uint64_t cum = 0;
    uint32_t median = 0;
    for (uint32_t c = 0; c <= n; ++c) {
        cum += hist[c];
        if (cum >= rank) {
            median = c;
            break;
        }
    }

    uint64_t sum = 0, sum_sq = 0;
    for (uint32_t c = 0; c <= n; ++c) {
        sum += hist[c] * c;
        sum_sq += hist[c] * static_cast<uint64_t>(c) * c;
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(trials);
    double se = 0.0;
    if (trials > 1) {
        const double var =
            (static_cast<double>(sum_sq) - mean * static_cast<double>(sum)) /
            static_cast<double>(trials - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    }

    InfluenceEstimate out;
    out.median = median;
    out.mean = mean;
    out.std_error = se;
    out.trials = trials;
    out.samples_kept = keep_histogram;
    if (keep_histogram) out.histogram = std::move(hist);
    return out;
}

// ---- exact enumeration ----

namespace {

// union-find with undo log and no path compression (find stays valid across
// rollbacks); union by size
struct RollbackDsu {
    std::vector<uint32_t> parent, size;
    struct Undo {
        uint32_t child, parent_root;
    };
    std::vector<Undo> log;

    void init(uint32_t n) {
        parent.resize(n);
        size.assign(n, 1);
        for (uint32_t i = 0; i < n; ++i) parent[i] = i;
        log.clear();
    }
    uint32_t find(uint32_t x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            log.push_back({UINT32_MAX, 0});
            return;
        }
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        log.push_back({b, a});
    }
    void undo() {
        const Undo u = log.back();
        log.pop_back();
        if (u.child == UINT32_MAX) return;
        parent[u.child] = u.child;
        size[u.parent_root] -= size[u.child];
    }
};

struct ExactContext {
    std::vector<Edge> edges;        // compacted to active ids
    std::vector<double> p_open;     // per edge
    std::vector<uint32_t> node_map; // parent id -> active id, UINT32_MAX if inactive
    uint32_t active_count = 0;      // nodes incident to edges (+ mapped seeds)
};

// Compact the node set to seeds + edge endpoints; counts are unaffected
// because untouched nodes can never join a seed cluster.
ExactContext make_context(const Graph& g, std::span<const uint32_t> extra_nodes, double p) {
    if (g.edge_count() > kExactEnumerationMaxEdges)
        throw config_error("exact enumeration budget exceeded: " + std::to_string(g.edge_count()) +
                           " edges > " + std::to_string(kExactEnumerationMaxEdges));
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("p must be in [0,1]");
    ExactContext ctx;
    ctx.node_map.assign(g.node_count(), UINT32_MAX);
    auto touch = [&](uint32_t u) {
        if (ctx.node_map[u] == UINT32_MAX) ctx.node_map[u] = ctx.active_count++;
        return ctx.node_map[u];
    };
    for (const uint32_t s : extra_nodes) touch(s);
    ctx.edges.reserve(g.edge_count());
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        ctx.edges.push_back({touch(u), touch(v)});
        ctx.p_open.push_back(g.has_edge_probabilities() ? g.edge_probabilities()[e] : p);
    }
    return ctx;
}

// Depth-first over open/closed states of every edge; calls leaf(weight, dsu)
// at each of the 2^E leaves.
template <class LeafFn>
void enumerate(const ExactContext& ctx, RollbackDsu& dsu, LeafFn&& leaf) {
    const uint32_t E = static_cast<uint32_t>(ctx.edges.size());
    // explicit recursion to keep the hot path tight
    auto rec = [&](auto&& self, uint32_t e, double w) -> void {
        if (w == 0.0) return; // entire subtree weightless (p is 0 or 1 somewhere)
        if (e == E) {
            leaf(w);
            return;
        }
        const double pe = ctx.p_open[e];
        if (pe < 1.0) self(self, e + 1, w * (1.0 - pe)); // closed
        if (pe > 0.0) {                                  // open
            dsu.unite(ctx.edges[e].u, ctx.edges[e].v);
            self(self, e + 1, w * pe);
            dsu.undo();
        }
    };
    rec(rec, 0, 1.0);
}

} // namespace

double exact_influence(const Graph& g, std::span<const uint32_t> seeds, double p) {
    validate_seeds(g, seeds);
    const ExactContext ctx = make_context(g, seeds, p);
    std::vector<uint32_t> mapped;
    mapped.reserve(seeds.size());
    for (const uint32_t s : seeds) mapped.push_back(ctx.node_map[s]);
    RollbackDsu dsu;
    dsu.init(ctx.active_count);
    double total = 0.0;
    std::vector<uint32_t> roots(seeds.size());
    enumerate(ctx, dsu, [&](double w) {
        uint32_t influenced = 0;
        size_t nroots = 0;
        for (const uint32_t s : mapped) {
            const uint32_t r = dsu.find(s);
            bool fresh = true;
            for (size_t i = 0; i < nroots; ++i)
                if (roots[i] == r) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                roots[nroots++] = r;
                influenced += dsu.size[r];
            }
        }
        total += w * influenced;
    });
    return total;
}

std::vector<double> exact_influence_distribution(const Graph& g, std::span<const uint32_t> seeds,
                                                 double p) {
    validate_seeds(g, seeds);
    const ExactContext ctx = make_context(g, seeds, p);
    std::vector<uint32_t> mapped;
    mapped.reserve(seeds.size());
    for (const uint32_t s : seeds) mapped.push_back(ctx.node_map[s]);
    RollbackDsu dsu;
    dsu.init(ctx.active_count);
    std::vector<double> pmf(g.node_count() + 1, 0.0);
    std::vector<uint32_t> roots(seeds.size());
    enumerate(ctx, dsu, [&](double w) {
        uint32_t influenced = 0;
        size_t nroots = 0;
        for (const uint32_t s : mapped) {
            const uint32_t r = dsu.find(s);
            bool fresh = true;
            for (size_t i = 0; i < nroots; ++i)
                if (roots[i] == r) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                roots[nroots++] = r;
                influenced += dsu.size[r];
            }
        }
        pmf[influenced] += w;
    });
    return pmf;
}

std::vector<double> exact_single_node_influences(const Graph& g, double p) {
    const ExactContext ctx = make_context(g, {}, p);
    std::vector<uint32_t> to_parent(ctx.active_count);
    for (uint32_t u = 0; u < g.node_count(); ++u)
        if (ctx.node_map[u] != UINT32_MAX) to_parent[ctx.node_map[u]] = u;
    RollbackDsu dsu;
    dsu.init(ctx.active_count);
    std::vector<double> active_infl(ctx.active_count, 0.0);
    enumerate(ctx, dsu, [&](double w) {
        for (uint32_t a = 0; a < ctx.active_count; ++a)
            active_infl[a] += w * dsu.size[dsu.find(a)];
    });
    std::vector<double> out(g.node_count(), 1.0); // isolated nodes: exactly themselves
    for (uint32_t a = 0; a < ctx.active_count; ++a) out[to_parent[a]] = active_infl[a];
    return out;
}

uint32_t best_single_node_exact(const Graph& g, double p) {
    if (g.node_count() == 0) throw config_error("best_single_node_exact: empty graph");
    const std::vector<double> infl = exact_single_node_influences(g, p);
    uint32_t best = 0;
    for (uint32_t u = 1; u < infl.size(); ++u)
        if (infl[u] > infl[best]) best = u; // strict > keeps the smallest id on ties
    return best;
}

OracleReport oracle_agreement_suite(uint64_t rng_seed, uint32_t graph_count, uint64_t trials) {
    OracleReport report;
    static constexpr double kPGrid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    for (uint32_t gi = 0; gi < graph_count; ++gi) {
        rng::CounterRng gen(rng_seed, rng::derive_stream(rng_seed, rng::tags::kOracleSuite, gi));
        const uint32_t n = 4 + gen.next_below(7);                       // 4..10
        const uint32_t max_edges = std::min<uint32_t>(14, n * (n - 1) / 2);
        const uint32_t target_edges = 3 + gen.next_below(max_edges - 2); // 3..max
        std::vector<Edge> edges;
        while (edges.size() < target_edges) {
            const uint32_t u = gen.next_below(n);
            const uint32_t v = gen.next_below(n);
            if (u == v) continue;
            const Edge e{std::min(u, v), std::max(u, v)};
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
        const Graph g = Graph::from_edges(n, std::move(edges));

        const uint32_t k = 1 + gen.next_below(3); // 1..3 seeds
        std::vector<uint32_t> seeds;
        while (seeds.size() < k) {
            const uint32_t s = gen.next_below(n);
            if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
        }

        for (const double p : kPGrid) {
            const double exact = exact_influence(g, seeds, p);
            CascadeParams params;
            params.p = p;
            params.picture = Picture::static_percolation;
            params.rng_seed = rng::derive_stream(rng_seed, rng::tags::kOracleSuite,
                                                 (static_cast<uint64_t>(gi) << 8) | 1);
            const InfluenceEstimate est = estimate(g, seeds, params, trials);
            // SE can be 0 when the influence is deterministic; allow fp slack
            const bool pass = std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-9;
            OracleCase c;
            c.description = "graph " + std::to_string(gi) + " (n=" + std::to_string(n) +
                            ", E=" + std::to_string(g.edge_count()) + ", k=" + std::to_string(k) +
                            ", p=" + std::to_string(p) + ")";
            c.exact = exact;
            c.mc_mean = est.mean;
            c.mc_std_error = est.std_error;
            c.pass = pass;
            ++report.cases;
            if (!pass) ++report.failures;
            report.details.push_back(std::move(c));
        }
    }
    return report;
}

} // namespace cascadelab
