#include "cascadelab/cascade.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/generators.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cascadelab;

TEST_SUITE_BEGIN("cascade");

namespace {

Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

CascadeParams params_with(double p, Picture picture, uint64_t seed = 0) {
    CascadeParams params;
    params.p = p;
    params.picture = picture;
    params.rng_seed = seed;
    return params;
}

} // namespace

TEST_CASE("p = 0 spreads to nobody") {
    const Graph g = triangle();
    const std::vector<uint32_t> seeds{0, 2};
    const CascadeOutcome dynamic =
        run_dynamic(g, seeds, params_with(0.0, Picture::dynamic_cascade));
    CHECK(dynamic.influenced_count == 2);
    CHECK(dynamic.influenced == seeds);
    CHECK(dynamic.steps == 0);
    const CascadeOutcome fixed =
        run_static(g, seeds, params_with(0.0, Picture::static_percolation));
    CHECK(fixed.influenced_count == 2);
}

TEST_CASE("p = 1 floods the component") {
    const Graph g = triangle();
    const std::vector<uint32_t> seeds{1};
    const CascadeOutcome dynamic =
        run_dynamic(g, seeds, params_with(1.0, Picture::dynamic_cascade));
    CHECK(dynamic.influenced_count == 3);
    CHECK(dynamic.influenced == std::vector<uint32_t>{0, 1, 2});
    const CascadeOutcome fixed =
        run_static(g, seeds, params_with(1.0, Picture::static_percolation));
    CHECK(fixed.influenced_count == 3);
    CHECK(fixed.largest_cluster_size == 3);
}

TEST_CASE("dynamic steps count activation rounds") {
    const Graph g = path3();
    CascadeParams params = params_with(1.0, Picture::dynamic_cascade);
    const CascadeOutcome out = run_dynamic(g, std::vector<uint32_t>{0}, params);
    CHECK(out.influenced_count == 3);
    CHECK(out.steps == 2); // node 1 in round 1, node 2 in round 2
}

TEST_CASE("single edge at p = 0.5 averages 1.5") {
    const Graph g = Graph::from_edges(2, {{0, 1}});
    CascadeParams params = params_with(0.5, Picture::dynamic_cascade, 77);
    const InfluenceEstimate est = estimate(g, std::vector<uint32_t>{0}, params, 20000);
    CHECK(std::abs(est.mean - 1.5) <= 3.0 * est.std_error);
    CHECK(est.std_error == doctest::Approx(0.5 / std::sqrt(20000.0)).epsilon(0.05));
}

TEST_CASE("triangle static expectation 2.25 and path 1.75") {
    // P(influence) for one triangle seed at p = 1/2: each neighbour reached
    // directly or around the long way: 1 - (1-p)(1-p^2) = 0.625 each
    CascadeParams params = params_with(0.5, Picture::static_percolation, 5);
    const InfluenceEstimate tri = estimate(triangle(), std::vector<uint32_t>{0}, params, 40000);
    CHECK(std::abs(tri.mean - 2.25) <= 3.0 * tri.std_error);

    const InfluenceEstimate path = estimate(path3(), std::vector<uint32_t>{0}, params, 40000);
    CHECK(std::abs(path.mean - 1.75) <= 3.0 * path.std_error);
}

TEST_CASE("seed validation") {
    const Graph g = triangle();
    const CascadeParams params = params_with(0.5, Picture::static_percolation);
    CHECK_THROWS_AS(run_static(g, std::vector<uint32_t>{}, params), config_error);
    CHECK_THROWS_AS(run_static(g, std::vector<uint32_t>{0, 0}, params), config_error);
    CHECK_THROWS_AS(run_static(g, std::vector<uint32_t>{3}, params), config_error);
    CHECK_THROWS_AS(validate_params(params_with(1.5, Picture::static_percolation)),
                    config_error);
    CHECK_THROWS_AS(validate_params(params_with(-0.1, Picture::static_percolation)),
                    config_error);
}

TEST_CASE("pictures produce matching distributions (chi-square)") {
    // the two pictures must produce identically distributed influenced sets
    const std::vector<Graph> graphs = {
        triangle(),
        path3(),
        Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}}),
        Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}, {1, 2}, {4, 5}}),
    };
    int cases = 0, passes = 0;
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        for (const double p : {0.2, 0.5, 0.8}) {
            CascadeParams st = params_with(p, Picture::static_percolation, 900 + gi);
            CascadeParams dy = params_with(p, Picture::dynamic_cascade, 1900 + gi);
            const std::vector<uint32_t> seeds{0};
            const InfluenceEstimate a = estimate(graphs[gi], seeds, st, 50000, true);
            const InfluenceEstimate b = estimate(graphs[gi], seeds, dy, 50000, true);
            const ChiSquareResult chi = chi_square_two_sample(a.histogram, b.histogram);
            ++cases;
            if (chi.p_value > 0.01) ++passes;
        }
    }
    CHECK(cases == 12);
    CHECK(passes >= 11); // alpha = 0.01 allows a rare false alarm
}

TEST_CASE("static influence is monotone in p per trial") {
    // thresholds are nested in p for a fixed (seed, stream, index), so the
    // whole estimate is pointwise monotone - an exact property, not noise
    const Graph g = generate_er(300, 3.0, 17);
    double last = -1.0;
    for (const double p : {0.1, 0.2, 0.3333, 0.5, 0.8, 1.0}) {
        CascadeParams params = params_with(p, Picture::static_percolation, 3);
        const InfluenceEstimate est = estimate(g, std::vector<uint32_t>{5}, params, 400);
        CHECK(est.mean >= last);
        last = est.mean;
    }
}

TEST_CASE("outcome bounds") {
    const Graph g = generate_er(100, 2.5, 21);
    const std::vector<uint32_t> seeds{0, 50, 99};
    for (const double p : {0.1, 0.5, 0.9}) {
        const CascadeOutcome dynamic =
            run_dynamic(g, seeds, params_with(p, Picture::dynamic_cascade, 5));
        CHECK(dynamic.influenced_count >= seeds.size());
        CHECK(dynamic.influenced_count <= g.node_count());
        const CascadeOutcome fixed =
            run_static(g, seeds, params_with(p, Picture::static_percolation, 5));
        CHECK(fixed.influenced_count >= seeds.size());
        CHECK(fixed.largest_cluster_size >= 1);
        CHECK(fixed.largest_cluster_size <= g.node_count());
    }
}

TEST_CASE("sampled edge probabilities") {
    const Graph g = generate_er(2000, 100.0, 31); // ~100k edges
    REQUIRE(g.edge_count() > 90000);

    // sigma = 0: exactly p on every edge
    const Graph exact = sample_edge_probabilities(g, 0.37, 0.0, 1);
    REQUIRE(exact.has_edge_probabilities());
    for (const double prob : exact.edge_probabilities()) CHECK(prob == 0.37);

    // mean within 0.005 of p for sigma = 0.1 at ~1e5 edges
    const Graph noisy = sample_edge_probabilities(g, 0.5, 0.1, 2);
    double sum = 0.0;
    for (const double prob : noisy.edge_probabilities()) {
        CHECK(prob >= 0.0);
        CHECK(prob <= 1.0);
        sum += prob;
    }
    CHECK(std::abs(sum / noisy.edge_count() - 0.5) < 0.005);

    // near-zero p with wide noise: truncation biases the mean upward
    const Graph low = sample_edge_probabilities(g, 0.02, 0.1, 3);
    double low_sum = 0.0;
    for (const double prob : low.edge_probabilities()) low_sum += prob;
    CHECK(low_sum / low.edge_count() > 0.02);

    // determinism
    const Graph again = sample_edge_probabilities(g, 0.5, 0.1, 2);
    CHECK(std::equal(noisy.edge_probabilities().begin(), noisy.edge_probabilities().end(),
                     again.edge_probabilities().begin()));
}

TEST_CASE("quenched noise is shared across trials") {
    // with stored probabilities, two estimates with different trial seeds see
    // the same disorder; the noisy model is a property of the network
    const Graph g = generate_er(50, 3.0, 41);
    const Graph noisy = sample_edge_probabilities(g, 0.4, 0.2, 7);
    CascadeParams a = params_with(0.4, Picture::static_percolation, 100);
    CascadeParams b = params_with(0.4, Picture::static_percolation, 200);
    // different trial streams, same plan: means agree within noise
    const InfluenceEstimate ea = estimate(noisy, std::vector<uint32_t>{0}, a, 30000);
    const InfluenceEstimate eb = estimate(noisy, std::vector<uint32_t>{0}, b, 30000);
    CHECK(std::abs(ea.mean - eb.mean) <=
          3.0 * std::sqrt(ea.std_error * ea.std_error + eb.std_error * eb.std_error));
}

TEST_SUITE_END();
