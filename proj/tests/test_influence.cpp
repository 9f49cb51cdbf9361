#include "cascadelab/errors.hpp"
#include "cascadelab/generators.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/optimize.hpp"
#include "cascadelab/parallel.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace cascadelab;

TEST_SUITE_BEGIN("influence");

namespace {

Graph star(uint32_t leaves) {
    std::vector<Edge> edges;
    for (uint32_t i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph::from_edges(leaves + 1, edges);
}

// center 0, hubs 1 and 2, m leaves on each hub
Graph two_hub_tree(uint32_t m) {
    std::vector<Edge> edges{{0, 1}, {0, 2}};
    for (uint32_t i = 0; i < m; ++i) {
        edges.push_back({1, 3 + i});
        edges.push_back({2, 3 + m + i});
    }
    return Graph::from_edges(3 + 2 * m, edges);
}

CascadeParams static_params(double p, uint64_t seed = 0) {
    CascadeParams params;
    params.p = p;
    params.picture = Picture::static_percolation;
    params.rng_seed = seed;
    return params;
}

} // namespace

TEST_CASE("star center at p = 1 reaches everyone") {
    const Graph g = star(10);
    const InfluenceEstimate est =
        estimate(g, std::vector<uint32_t>{0}, static_params(1.0), 500);
    CHECK(est.median == 11.0);
    CHECK(est.mean == 11.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("estimate is deterministic and thread-count independent") {
    const Graph g = generate_er(400, 3.0, 3);
    const std::vector<uint32_t> seeds{1, 2, 3};
    par::set_thread_cap(1);
    const InfluenceEstimate one = estimate(g, seeds, static_params(0.4, 9), 4001, true);
    par::set_thread_cap(3);
    const InfluenceEstimate three = estimate(g, seeds, static_params(0.4, 9), 4001, true);
    par::set_thread_cap(0);

    CHECK(one.median == three.median);
    CHECK(one.mean == three.mean);
    CHECK(one.std_error == three.std_error);
    CHECK(one.histogram == three.histogram);
    CHECK(std::accumulate(one.histogram.begin(), one.histogram.end(), uint64_t{0}) == 4001);
}

TEST_CASE("single trial has zero standard error") {
    const Graph g = star(3);
    const InfluenceEstimate est =
        estimate(g, std::vector<uint32_t>{0}, static_params(0.5, 1), 1);
    CHECK(est.trials == 1);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("exact influence on tiny graphs") {
    const Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(exact_influence(triangle, std::vector<uint32_t>{0}, 0.5) ==
          doctest::Approx(2.25).epsilon(1e-12));
    const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(exact_influence(path, std::vector<uint32_t>{0}, 0.5) ==
          doctest::Approx(1.75).epsilon(1e-12));
    // seeds covering the graph: exact n regardless of p
    CHECK(exact_influence(path, std::vector<uint32_t>{0, 1, 2}, 0.123) ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("exact influence respects stored edge probabilities") {
    Graph edge = Graph::from_edges(2, {{0, 1}});
    edge = edge.with_edge_probabilities({0.3});
    // the p argument is ignored when the graph carries probabilities
    CHECK(exact_influence(edge, std::vector<uint32_t>{0}, 0.9) ==
          doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("exact enumeration budget") {
    const Graph big = generate_er(40, 2.0, 5);
    if (big.edge_count() > kExactEnumerationMaxEdges)
        CHECK_THROWS_AS(exact_influence(big, std::vector<uint32_t>{0}, 0.5), config_error);
}

TEST_CASE("exact distribution is a pmf matching the mean") {
    const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    const std::vector<uint32_t> seeds{1};
    const double p = 0.37;
    const std::vector<double> pmf = exact_influence_distribution(g, seeds, p);
    REQUIRE(pmf.size() == g.node_count() + 1);
    double total = 0.0, mean = 0.0;
    for (size_t c = 0; c < pmf.size(); ++c) {
        CHECK(pmf[c] >= 0.0);
        total += pmf[c];
        mean += static_cast<double>(c) * pmf[c];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(exact_influence(g, seeds, p)).epsilon(1e-12));
    CHECK(pmf[0] == 0.0); // seeds are always influenced

    // single edge at p = 0.5: half the mass on 1, half on 2
    const Graph edge = Graph::from_edges(2, {{0, 1}});
    const std::vector<double> simple =
        exact_influence_distribution(edge, std::vector<uint32_t>{0}, 0.5);
    CHECK(simple[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(simple[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("per-node exact influences and argmax") {
    const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    const std::vector<double> singles = exact_single_node_influences(path, 0.5);
    REQUIRE(singles.size() == 3);
    CHECK(singles[0] == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(singles[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(singles[2] == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(best_single_node_exact(path, 0.5) == 1);

    // all-symmetric graph: ties resolve to the smallest id
    const Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(best_single_node_exact(triangle, 0.6) == 0);

    // isolated node has influence exactly 1
    const Graph with_isolate = Graph::from_edges(3, {{0, 1}});
    CHECK(exact_single_node_influences(with_isolate, 0.9)[2] ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-hub tree analytics") {
    const uint32_t m = 5;
    const Graph g = two_hub_tree(m);
    REQUIRE(g.node_count() == 13);
    const auto center_influence = [&](double p) { return 1 + 2 * p + 2 * m * p * p; };
    const auto hub_influence = [&](double p) {
        return 1 + (m + 1) * p + p * p + m * p * p * p;
    };
    for (const double p : {0.1, 0.4, 0.7, 0.85, 0.95}) {
        const std::vector<double> singles = exact_single_node_influences(g, p);
        CHECK(singles[0] == doctest::Approx(center_influence(p)).epsilon(1e-10));
        CHECK(singles[1] == doctest::Approx(hub_influence(p)).epsilon(1e-10));
        CHECK(singles[2] == doctest::Approx(hub_influence(p)).epsilon(1e-10));
    }
    // the best node switches from a hub to the center at p* = (m-1)/m = 0.8;
    // the two hubs tie exactly, so rounding decides which one surfaces
    const uint32_t below = best_single_node_exact(g, 0.7);
    CHECK((below == 1 || below == 2));
    CHECK(best_single_node_exact(g, 0.9) == 0);
}

TEST_CASE("monte carlo agrees with the exact oracle") {
    const OracleReport report = oracle_agreement_suite(1);
    CHECK(report.cases == 100);
    CHECK(report.failures == 0);
    CHECK(report.details.size() == report.cases);
}

TEST_CASE("median and mean coincide away from the transition") {
    // deep sub-critical and deep super-critical: the influence distribution
    // is narrow, so |median - mean| is far below 1% of n
    const Graph g = generate_er(1000, 3.0, 13);
    const SeedSelection sel = select_random(g, 3, 21);
    for (const double p : {0.05, 0.9}) {
        const InfluenceEstimate est = estimate(g, sel.seeds, static_params(p, 4), 4000);
        CHECK(std::abs(est.median - est.mean) <= 10.0);
    }
}

TEST_SUITE_END();
