#include "cascadelab/optimize.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cascadelab {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::random: return "random";
    case Strategy::hill_climb: return "hill_climb";
    case Strategy::local: return "local";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "random") return Strategy::random;
    if (name == "hill_climb") return Strategy::hill_climb;
    if (name == "local") return Strategy::local;
    throw config_error("unknown strategy '" + name + "' (expected random | hill_climb | local)");
}

namespace {

// k distinct draws via partial Fisher-Yates
std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t k, rng::CounterRng& gen) {
    std::vector<uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (uint32_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + gen.next_below(n - i)]);
    pool.resize(k);
    return pool;
}

void validate_k(const Graph& g, uint32_t k) {
    if (k < 1 || k > g.node_count())
        throw config_error("k must be in [1, n] (k=" + std::to_string(k) +
                           ", n=" + std::to_string(g.node_count()) + ")");
}

} // namespace

SeedSelection select_random(const Graph& g, uint32_t k, uint64_t rng_seed) {
    validate_k(g, k);
    rng::CounterRng gen(rng_seed, rng::derive_stream(rng_seed, rng::tags::kSelectRandom, 0));
    SeedSelection sel;
    sel.seeds = sample_distinct(g.node_count(), k, gen);
    std::sort(sel.seeds.begin(), sel.seeds.end());
    sel.strategy = Strategy::random;
    sel.cost_steps = 0;
    sel.k = k;
    return sel;
}

SeedSelection select_hill_climb(const Graph& g, uint32_t k, const CascadeParams& params,
                                uint32_t trials_per_eval, uint64_t rng_seed) {
    validate_k(g, k);
    validate_params(params);
    if (trials_per_eval < 1) throw config_error("trials_per_eval must be >= 1");

    const uint32_t n = g.node_count();
    const CoinPlan plan = CoinPlan::make(g, params);

    std::vector<uint32_t> chosen;
    std::vector<char> in_set(n, 0);
    uint64_t cost = 0;

    // per-node marginal-gain accumulators (shared realizations per round;
    // integer sums make the parallel reduction order-independent)
    const unsigned workers = par::plan_workers(trials_per_eval, 16);
    std::vector<std::vector<int64_t>> gain_slots(workers, std::vector<int64_t>(n, 0));

    for (uint32_t round = 0; round < k; ++round) {
        const uint64_t round_stream_seed =
            rng::derive_stream(rng_seed, rng::tags::kHillRound, round);
        for (auto& slot : gain_slots) std::fill(slot.begin(), slot.end(), int64_t{0});

        par::parallel_for(trials_per_eval, 16, [&](unsigned w, uint64_t begin, uint64_t end) {
            TrialScratch scratch;
            scratch.prepare(g);
            auto& gain = gain_slots[w];
            std::vector<char> root_in_set(n);
            for (uint64_t t = begin; t < end; ++t) {
                const uint64_t stream =
                    rng::derive_stream(round_stream_seed, rng::tags::kEstimateTrial, t);
                // build the percolation realization once, score all candidates on it
                scratch.dsu.reset(n);
                plan.fill_mask(rng_seed, stream, scratch.mask.data());
                const auto edges = g.edges();
                for (uint64_t mw = 0; mw < scratch.mask.size(); ++mw) {
                    uint64_t bits = scratch.mask[mw];
                    while (bits) {
                        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                        bits &= bits - 1;
                        const Edge& e = edges[mw * 64 + b];
                        scratch.dsu.unite(e.u, e.v);
                    }
                }
                std::fill(root_in_set.begin(), root_in_set.end(), char{0});
                for (const uint32_t s : chosen) root_in_set[scratch.dsu.find(s)] = 1;
                for (uint32_t u = 0; u < n; ++u) {
                    if (in_set[u]) continue;
                    const uint32_t r = scratch.dsu.find(u);
                    if (!root_in_set[r]) gain[u] += scratch.dsu.component_size(r);
                }
            }
        });

        for (unsigned w = 1; w < workers; ++w)
            for (uint32_t u = 0; u < n; ++u) gain_slots[0][u] += gain_slots[w][u];

        uint32_t best = UINT32_MAX;
        int64_t best_gain = -1;
        for (uint32_t u = 0; u < n; ++u) {
            if (in_set[u]) continue;
            if (gain_slots[0][u] > best_gain) { // strict > : smallest id wins ties
                best_gain = gain_slots[0][u];
                best = u;
            }
        }
        chosen.push_back(best);
        in_set[best] = 1;
        cost += static_cast<uint64_t>(n - round) * trials_per_eval; // candidates this round
    }

    SeedSelection sel;
    sel.seeds = std::move(chosen);
    std::sort(sel.seeds.begin(), sel.seeds.end());
    sel.strategy = Strategy::hill_climb;
    sel.cost_steps = cost;
    sel.k = k;
    return sel;
}

SeedSelection select_hill_climb_exact(const Graph& g, uint32_t k, double p) {
    validate_k(g, k);
    std::vector<uint32_t> chosen;
    std::vector<char> in_set(g.node_count(), 0);
    std::vector<uint32_t> trial;
    for (uint32_t round = 0; round < k; ++round) {
        uint32_t best = UINT32_MAX;
        double best_value = -1.0;
        for (uint32_t u = 0; u < g.node_count(); ++u) {
            if (in_set[u]) continue;
            trial = chosen;
            trial.push_back(u);
            const double value = exact_influence(g, trial, p);
            if (value > best_value + 1e-12) {
                best_value = value;
                best = u;
            }
        }
        chosen.push_back(best);
        in_set[best] = 1;
    }
    SeedSelection sel;
    sel.seeds = std::move(chosen);
    std::sort(sel.seeds.begin(), sel.seeds.end());
    sel.strategy = Strategy::hill_climb;
    sel.cost_steps = 0;
    sel.k = k;
    return sel;
}

namespace {

// Whole-frontier BFS truncated to mass M; returns members (root first,
// ascending within each frontier ring).
std::vector<uint32_t> grow_subnetwork(const Graph& g, uint32_t root, uint32_t M,
                                      std::vector<uint32_t>& stamp, uint32_t epoch) {
    std::vector<uint32_t> members{root};
    stamp[root] = epoch;
    std::vector<uint32_t> frontier{root};
    while (!frontier.empty() && members.size() < M) {
        std::vector<uint32_t> next;
        for (const uint32_t u : frontier)
            for (const uint32_t v : g.neighbors(u))
                if (stamp[v] != epoch) {
                    stamp[v] = epoch;
                    next.push_back(v);
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        const size_t room = M - members.size();
        if (next.size() > room) next.resize(room); // truncate smallest-id-first
        members.insert(members.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return members;
}

// argmax of Monte-Carlo mean influence inside the induced sub-network;
// returns the winner in parent ids. Shared realizations across members.
uint32_t best_member(const Graph& g, const std::vector<uint32_t>& members,
                     const CascadeParams& params, uint32_t trials_per_eval,
                     uint64_t rng_seed, uint64_t eval_stream_seed) {
    // sorted members: sub ids are parent-order, so smallest sub id on a tie
    // is also the smallest parent id
    std::vector<uint32_t> sorted(members);
    std::sort(sorted.begin(), sorted.end());
    const InducedSubgraph sub = induced_subgraph(g, sorted);
    const uint32_t m = sub.graph.node_count();

    CascadeParams sub_params = params;
    sub_params.rng_seed = eval_stream_seed; // quenched noise, if any, per sub-network
    const CoinPlan plan = CoinPlan::make(sub.graph, sub_params);

    std::vector<int64_t> gain(m, 0);
    TrialScratch scratch;
    scratch.prepare(sub.graph);
    const auto edges = sub.graph.edges();
    for (uint32_t t = 0; t < trials_per_eval; ++t) {
        const uint64_t stream =
            rng::derive_stream(eval_stream_seed, rng::tags::kEstimateTrial, t);
        scratch.dsu.reset(m);
        plan.fill_mask(rng_seed, stream, scratch.mask.data());
        for (uint64_t mw = 0; mw < scratch.mask.size(); ++mw) {
            uint64_t bits = scratch.mask[mw];
            while (bits) {
                const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                bits &= bits - 1;
                const Edge& e = edges[mw * 64 + b];
                scratch.dsu.unite(e.u, e.v);
            }
        }
        for (uint32_t u = 0; u < m; ++u) gain[u] += scratch.dsu.component_size(u);
    }
    uint32_t best = 0;
    for (uint32_t u = 1; u < m; ++u)
        if (gain[u] > gain[best]) best = u;
    return sub.to_parent[best];
}

} // namespace

SeedSelection select_local(const Graph& g, uint32_t k, uint32_t M, const CascadeParams& params,
                           uint32_t trials_per_eval, uint64_t rng_seed) {
    validate_k(g, k);
    validate_params(params);
    if (M < 1) throw config_error("local: M must be >= 1");
    if (trials_per_eval < 1) throw config_error("trials_per_eval must be >= 1");

    const uint32_t n = g.node_count();
    rng::CounterRng root_gen(rng_seed, rng::derive_stream(rng_seed, rng::tags::kLocalRoot, 0));
    std::vector<uint32_t> roots = sample_distinct(n, k, root_gen);

    std::vector<uint32_t> stamp(n, 0);
    uint32_t epoch = 0;
    std::vector<char> is_root(n, 0);
    for (const uint32_t r : roots) is_root[r] = 1;

    std::vector<uint32_t> winners;
    std::vector<char> taken(n, 0);
    uint64_t cost = 0;

    for (uint32_t i = 0; i < k; ++i) {
        uint32_t root = roots[i];
        uint32_t winner = UINT32_MAX;
        uint64_t retained_eval = 0;
        constexpr int kRerootRetries = 10;
        for (int attempt = 0; attempt <= kRerootRetries; ++attempt) {
            if (attempt > 0) {
                // collision: re-root on a fresh random node not already a root
                uint32_t candidate = root_gen.next_below(n);
                int guard = 0;
                while (is_root[candidate] && ++guard < 64) candidate = root_gen.next_below(n);
                if (is_root[candidate]) break; // give up, fall back to the root
                is_root[roots[i]] = 0;
                roots[i] = candidate;
                is_root[candidate] = 1;
                root = candidate;
            }
            const std::vector<uint32_t> members = grow_subnetwork(g, root, M, stamp, ++epoch);
            const uint64_t eval_stream = rng::derive_stream(
                rng_seed, rng::tags::kLocalEval, (static_cast<uint64_t>(i) << 8) | attempt);
            const uint32_t candidate =
                best_member(g, members, params, trials_per_eval, rng_seed, eval_stream);
            retained_eval = members.size() * static_cast<uint64_t>(trials_per_eval);
            if (!taken[candidate]) {
                winner = candidate;
                break;
            }
        }
        if (winner == UINT32_MAX) {
            // all retries collided: fall back to the sub-network's root
            winner = root;
            if (taken[winner]) {
                // pathological: root itself is an earlier winner; take the
                // smallest free id so |seeds| = k still holds
                for (uint32_t u = 0; u < n; ++u)
                    if (!taken[u]) {
                        winner = u;
                        break;
                    }
            }
        }
        taken[winner] = 1;
        winners.push_back(winner);
        cost += retained_eval;
    }

    SeedSelection sel;
    sel.seeds = std::move(winners);
    std::sort(sel.seeds.begin(), sel.seeds.end());
    sel.strategy = Strategy::local;
    sel.cost_steps = cost;
    sel.k = k;
    sel.local_mass = M;
    return sel;
}

} // namespace cascadelab
