#include "cascadelab/errors.hpp"
#include "cascadelab/generators.hpp"
#include "cascadelab/graph.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/optimize.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace cascadelab;

TEST_SUITE_BEGIN("optimize");

namespace {

CascadeParams static_params(double p) {
    CascadeParams params;
    params.p = p;
    params.picture = Picture::static_percolation;
    return params;
}

Graph star(uint32_t leaves) {
    std::vector<Edge> edges;
    for (uint32_t i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph::from_edges(leaves + 1, edges);
}

// best exact k-subset by brute force over all C(n, k) subsets
double brute_force_best(const Graph& g, uint32_t k, double p) {
    const uint32_t n = g.node_count();
    std::vector<uint32_t> pick(k);
    double best = 0.0;
    const auto recurse = [&](auto&& self, uint32_t next, uint32_t depth) -> void {
        if (depth == k) {
            best = std::max(best, exact_influence(g, pick, p));
            return;
        }
        for (uint32_t u = next; u + (k - depth) <= n; ++u) {
            pick[depth] = u;
            self(self, u + 1, depth + 1);
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

} // namespace

TEST_CASE("random selection basics") {
    const Graph g = generate_er(100, 3.0, 1);
    const SeedSelection sel = select_random(g, 5, 42);
    CHECK(sel.seeds.size() == 5);
    CHECK(std::is_sorted(sel.seeds.begin(), sel.seeds.end()));
    CHECK(std::set<uint32_t>(sel.seeds.begin(), sel.seeds.end()).size() == 5);
    CHECK(sel.cost_steps == 0);
    CHECK(sel.strategy == Strategy::random);

    // deterministic by seed
    CHECK(select_random(g, 5, 42).seeds == sel.seeds);
    CHECK(select_random(g, 5, 43).seeds != sel.seeds);

    // k = n selects everybody
    const Graph tiny = star(3);
    CHECK(select_random(tiny, 4, 7).seeds == std::vector<uint32_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(select_random(tiny, 5, 7), config_error);
    CHECK_THROWS_AS(select_random(tiny, 0, 7), config_error);
}

TEST_CASE("hill climb splits across disjoint triangles") {
    // two disjoint triangles at p = 1: any one seed floods its triangle, so
    // greedy must place the two seeds in different triangles
    const Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const SeedSelection sel = select_hill_climb(g, 2, static_params(1.0), 50, 3);
    CHECK(sel.seeds == std::vector<uint32_t>{0, 3}); // ties resolve to smallest ids
    CHECK(sel.strategy == Strategy::hill_climb);
}

TEST_CASE("hill climb finds the star center") {
    const Graph g = star(10);
    const SeedSelection sel = select_hill_climb(g, 1, static_params(0.6), 200, 5);
    CHECK(sel.seeds == std::vector<uint32_t>{0});
}

TEST_CASE("hill climb tie-break at p = 0 picks smallest ids") {
    const Graph g = generate_er(30, 3.0, 2);
    const SeedSelection sel = select_hill_climb(g, 3, static_params(0.0), 20, 1);
    CHECK(sel.seeds == std::vector<uint32_t>{0, 1, 2});
}

TEST_CASE("hill climb cost accounting") {
    const Graph g = generate_er(40, 3.0, 4);
    const SeedSelection sel = select_hill_climb(g, 3, static_params(0.3), 50, 9);
    CHECK(sel.cost_steps == (40 + 39 + 38) * 50);
}

TEST_CASE("greedy achieves the submodular guarantee on exact oracles") {
    // greedy with exact scoring is within (1 - 1/e) of the best subset
    const double guarantee = 1.0 - 1.0 / std::exp(1.0);
    int checked = 0;
    for (uint64_t seed = 1; checked < 5; ++seed) {
        const Graph g = generate_er(9, 2.4, seed);
        if (g.edge_count() > 14 || g.edge_count() < 6) continue;
        ++checked;
        for (const double p : {0.3, 0.7}) {
            const SeedSelection greedy = select_hill_climb_exact(g, 2, p);
            const double greedy_value = exact_influence(g, greedy.seeds, p);
            const double best_value = brute_force_best(g, 2, p);
            CHECK(greedy_value >= guarantee * best_value - 1e-9);
            CHECK(greedy_value <= best_value + 1e-9);
        }
    }
}

TEST_CASE("local selection with unit mass returns the roots") {
    const Graph g = generate_er(200, 3.0, 6);
    const SeedSelection sel = select_local(g, 4, 1, static_params(0.5), 30, 11);
    CHECK(sel.seeds.size() == 4);
    CHECK(std::set<uint32_t>(sel.seeds.begin(), sel.seeds.end()).size() == 4);
    CHECK(sel.cost_steps == 4ull * 1 * 30); // one member per sub-network
    CHECK(sel.local_mass == 1);
}

TEST_CASE("local selection with whole-graph mass finds the star center") {
    const Graph g = star(10);
    const SeedSelection sel = select_local(g, 1, 11, static_params(0.6), 400, 13);
    CHECK(sel.seeds == std::vector<uint32_t>{0});
}

TEST_CASE("local selection returns distinct seeds despite collisions") {
    // complete K4: every sub-network is the whole graph and every evaluation
    // crowns the same winner, forcing the collision path
    const Graph g =
        Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const SeedSelection sel = select_local(g, 3, 4, static_params(1.0), 20, 17);
    CHECK(sel.seeds.size() == 3);
    CHECK(std::set<uint32_t>(sel.seeds.begin(), sel.seeds.end()).size() == 3);
}

TEST_CASE("local cost is size independent") {
    // the cost bound k * M * trials_per_eval binds exactly whenever every
    // sub-network can reach M members
    const uint32_t k = 3, M = 50, tpe = 20;
    const Graph small = dominant_component(generate_er(1000, 3.0, 8)).graph;
    const Graph large = dominant_component(generate_er(10000, 3.0, 8)).graph;
    const SeedSelection a = select_local(small, k, M, static_params(0.35), tpe, 19);
    const SeedSelection b = select_local(large, k, M, static_params(0.35), tpe, 23);
    CHECK(a.cost_steps == uint64_t{k} * M * tpe);
    CHECK(b.cost_steps == uint64_t{k} * M * tpe);
}

TEST_CASE("local cost never exceeds the bound") {
    const Graph g = generate_er(300, 2.0, 30); // many small components
    for (const uint32_t M : {5u, 40u, 400u}) {
        const SeedSelection sel = select_local(g, 4, M, static_params(0.4), 25, 3);
        CHECK(sel.cost_steps <= uint64_t{4} * M * 25);
        CHECK(sel.seeds.size() == 4);
    }
}

TEST_CASE("strategy names round trip") {
    CHECK(strategy_from_name("random") == Strategy::random);
    CHECK(strategy_from_name("hill_climb") == Strategy::hill_climb);
    CHECK(strategy_from_name("local") == Strategy::local);
    CHECK(std::string(strategy_name(Strategy::local)) == "local");
    CHECK_THROWS_AS(strategy_from_name("bogus"), config_error);
}

TEST_CASE("selection determinism") {
    const Graph g = generate_er(150, 3.0, 10);
    const CascadeParams params = static_params(0.4);
    CHECK(select_hill_climb(g, 3, params, 40, 5).seeds ==
          select_hill_climb(g, 3, params, 40, 5).seeds);
    CHECK(select_local(g, 3, 20, params, 40, 5).seeds ==
          select_local(g, 3, 20, params, 40, 5).seeds);
}

TEST_SUITE_END();
