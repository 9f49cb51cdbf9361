#include "cascadelab/generators.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

namespace cascadelab {

namespace {

// packed undirected edge key, u < v
inline uint64_t edge_key(uint32_t u, uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(u) << 32) | v;
}

} // namespace

const char* family_name(NetworkFamily f) {
    switch (f) {
    case NetworkFamily::er: return "er";
    case NetworkFamily::small_world: return "small_world";
    case NetworkFamily::config_power_law: return "config_power_law";
    }
    return "?";
}

NetworkFamily family_from_name(const std::string& name) {
    if (name == "er") return NetworkFamily::er;
    if (name == "small_world") return NetworkFamily::small_world;
    if (name == "config_power_law") return NetworkFamily::config_power_law;
    throw config_error("unknown network family '" + name +
                       "' (expected er | small_world | config_power_law)");
}

Graph generate_er(uint32_t n, double mean_degree, uint64_t seed) {
    if (n < 2) throw config_error("er: need n >= 2");
    if (!(mean_degree > 0.0) || mean_degree > static_cast<double>(n - 1))
        throw config_error("er: mean_degree must be in (0, n-1]");
    const double p = mean_degree / static_cast<double>(n - 1);
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(0.5 * n * mean_degree * 1.1) + 16);

    if (p >= 1.0) {
        for (uint32_t v = 1; v < n; ++v)
            for (uint32_t w = 0; w < v; ++w) edges.push_back({w, v});
        return Graph::from_edges(n, std::move(edges));
    }

    // Batagelj-Brandes geometric skipping over the lower-triangular pair list
    rng::CounterRng gen(seed, rng::derive_stream(seed, rng::tags::kGenerator, 0));
    const double log1mp = std::log1p(-p);
    uint64_t v = 1;
    int64_t w = -1;
    while (v < n) {
        double r = gen.next_unit_double();
        while (r >= 1.0) r = gen.next_unit_double(); // paranoid; next_unit_double < 1
        w += 1 + static_cast<int64_t>(std::floor(std::log1p(-r) / log1mp));
        while (w >= static_cast<int64_t>(v) && v < n) {
            w -= static_cast<int64_t>(v);
            ++v;
        }
        if (v < n) edges.push_back({static_cast<uint32_t>(w), static_cast<uint32_t>(v)});
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph generate_small_world(uint32_t n, uint32_t z, double mu, uint64_t seed) {
    if (n < 3) throw config_error("small_world: need n >= 3");
    if (z < 2 || z % 2 != 0 || z > n - 1)
        throw config_error("small_world: ring degree z must be even, >= 2 and <= n-1");
    if (!(mu >= 0.0 && mu <= 1.0)) throw config_error("small_world: mu must be in [0,1]");

    rng::CounterRng gen(seed, rng::derive_stream(seed, rng::tags::kGenerator, 1));
    const uint64_t mu_thr = rng::bernoulli_threshold(mu);

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n) * z / 2);
    std::unordered_set<uint64_t> present;
    present.reserve(static_cast<size_t>(n) * z);
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t j = 1; j <= z / 2; ++j) {
            const uint32_t v = (u + j) % n;
            edges.push_back({u, v});
            present.insert(edge_key(u, v));
        }
    }

    // rewire the far endpoint of each ring edge with probability mu
    constexpr int kRewireRetries = 64;
    for (auto& e : edges) {
        if (!gen.next_bernoulli(mu_thr)) continue;
        const uint32_t u = e.u; // near endpoint stays
        for (int attempt = 0; attempt < kRewireRetries; ++attempt) {
            const uint32_t w = gen.next_below(n);
            if (w == u || present.count(edge_key(u, w))) continue;
            present.erase(edge_key(e.u, e.v));
            present.insert(edge_key(u, w));
            e = {u, w};
            break;
        }
        // all retries collided: keep the original edge
    }
    return Graph::from_edges(n, std::move(edges));
}

double power_law_mean_degree(uint32_t n, double alpha, uint32_t kmin) {
    if (n < 2 || kmin < 1 || kmin > n - 1 || !(alpha > 1.0))
        throw config_error("power_law_mean_degree: need n >= 2, 1 <= kmin <= n-1, alpha > 1");
    double norm = 0.0, mean = 0.0;
    for (uint32_t k = kmin; k <= n - 1; ++k) {
        const double w = std::pow(static_cast<double>(k), -alpha);
        norm += w;
        mean += w * k;
    }
    return mean / norm;
}

Graph generate_config_power_law(uint32_t n, double alpha, uint32_t kmin, uint64_t seed) {
    if (n < 3) throw config_error("config_power_law: need n >= 3");
    if (kmin < 1 || kmin > n - 1)
        throw config_error("config_power_law: need 1 <= kmin <= n-1");
    if (!(alpha > 1.0)) throw config_error("config_power_law: need alpha > 1");

    // inverse-CDF table over k in [kmin, n-1]
    const uint32_t kmax = n - 1;
    std::vector<double> cdf(kmax - kmin + 1);
    double norm = 0.0;
    for (uint32_t k = kmin; k <= kmax; ++k) {
        norm += std::pow(static_cast<double>(k), -alpha);
        cdf[k - kmin] = norm;
    }
    for (double& c : cdf) c /= norm;
    cdf.back() = 1.0;

    rng::CounterRng gen(seed, rng::derive_stream(seed, rng::tags::kGenerator, 2));

    std::vector<uint32_t> degree(n);
    uint64_t stub_total = 0;
    for (uint32_t i = 0; i < n; ++i) {
        const double u = gen.next_unit_double();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        degree[i] = kmin + static_cast<uint32_t>(it - cdf.begin());
        stub_total += degree[i];
    }
    if (stub_total % 2 != 0) {
        // parity fix: one extra stub on a uniformly chosen node (not already at kmax)
        uint32_t i = gen.next_below(n);
        while (degree[i] >= kmax) i = gen.next_below(n);
        ++degree[i];
        ++stub_total;
    }

    std::vector<uint32_t> stubs;
    stubs.reserve(stub_total);
    for (uint32_t i = 0; i < n; ++i)
        stubs.insert(stubs.end(), degree[i], i);

    // Pair all stubs at once, then repair self-loops and duplicates with
    // degree-preserving double-edge swaps. Plain retry-on-clash pairing dies
    // on heavy tails: near the end of a pass the largest hub's remaining
    // stubs can outnumber the distinct partners left, so a clash is forced no
    // matter how often the pass restarts. Swapping against a uniformly chosen
    // partner edge fixes conflicts without touching the degree sequence.
    constexpr int kMaxRestarts = 20;
    constexpr size_t kNoBadPos = std::numeric_limits<size_t>::max();
    for (int restart = 0; restart <= kMaxRestarts; ++restart) {
        // Fisher-Yates
        for (size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[gen.next_below(static_cast<uint32_t>(i + 1))]);

        const size_t pair_count = stubs.size() / 2;
        std::vector<Edge> pairs(pair_count);
        std::unordered_set<uint64_t> present; // keys of conflict-free pairs
        present.reserve(stub_total);
        std::vector<size_t> bad;               // indices of conflicted pairs
        std::vector<size_t> bad_pos(pair_count, kNoBadPos);
        for (size_t i = 0; i < pair_count; ++i) {
            pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};
            const uint64_t key = edge_key(pairs[i].u, pairs[i].v);
            if (pairs[i].u == pairs[i].v || present.count(key)) {
                bad_pos[i] = bad.size();
                bad.push_back(i);
            } else {
                present.insert(key);
            }
        }

        const auto mark_good = [&](size_t i) {
            const size_t pos = bad_pos[i];
            bad_pos[bad.back()] = pos;
            std::swap(bad[pos], bad.back());
            bad.pop_back();
            bad_pos[i] = kNoBadPos;
        };

        uint64_t attempts_left = 400 * static_cast<uint64_t>(pair_count) + 100000;
        while (!bad.empty() && attempts_left-- > 0) {
            const size_t bi = bad.back();
            const size_t j = gen.next_below(static_cast<uint32_t>(pair_count));
            if (j == bi) continue;
            const Edge x = pairs[bi], y = pairs[j];
            const bool cross = gen.next_below(2) != 0; // swap orientation
            const Edge n1{x.u, cross ? y.v : y.u};
            const Edge n2{x.v, cross ? y.u : y.v};
            if (n1.u == n1.v || n2.u == n2.v) continue;
            const uint64_t k1 = edge_key(n1.u, n1.v), k2 = edge_key(n2.u, n2.v);
            if (k1 == k2) continue;
            const bool j_good = bad_pos[j] == kNoBadPos;
            if (j_good) present.erase(edge_key(y.u, y.v));
            if (present.count(k1) || present.count(k2)) {
                if (j_good) present.insert(edge_key(y.u, y.v)); // roll back
                continue;
            }
            present.insert(k1);
            present.insert(k2);
            pairs[bi] = n1;
            pairs[j] = n2;
            mark_good(bi);
            if (!j_good) mark_good(j);
        }
        if (bad.empty()) {
            std::vector<Edge> edges(pairs.begin(), pairs.end());
            return Graph::from_edges(n, std::move(edges));
        }
    }
    throw generation_error("config_power_law: conflict repair failed after 20 restarts (n=" +
                           std::to_string(n) + ", alpha=" + std::to_string(alpha) +
                           ", kmin=" + std::to_string(kmin) + ")");
}

Graph generate(const GeneratorSpec& spec, uint64_t seed) {
    switch (spec.family) {
    case NetworkFamily::er:
        return generate_er(spec.n, spec.mean_degree, seed);
    case NetworkFamily::small_world:
        return generate_small_world(spec.n, spec.ring_degree, spec.rewire_prob, seed);
    case NetworkFamily::config_power_law:
        return generate_config_power_law(spec.n, spec.power_law_alpha, spec.min_degree, seed);
    }
    throw config_error("generate: unknown family");
}

} // namespace cascadelab
