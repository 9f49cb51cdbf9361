#include "cascadelab/graph.hpp"
#include "cascadelab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace cascadelab {

Graph Graph::from_edges(uint32_t node_count, std::vector<Edge> edges) {
    Graph g;
    g.node_count_ = node_count;
    for (auto& e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw config_error("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                               std::to_string(e.v) + ") with node_count " +
                               std::to_string(node_count));
        if (e.u == e.v)
            throw config_error("self-loop at node " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw config_error("duplicate edge (" + std::to_string(dup->u) + "," +
                           std::to_string(dup->v) + ")");
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    offsets_.assign(node_count_ + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.resize(2 * edges_.size());
    adj_edge_.resize(2 * edges_.size());
    std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (uint32_t e = 0; e < edges_.size(); ++e) {
        const auto [u, v] = edges_[e];
        adj_[cursor[u]] = v;
        adj_edge_[cursor[u]++] = e;
        adj_[cursor[v]] = u;
        adj_edge_[cursor[v]++] = e;
    }
}

std::vector<uint32_t> Graph::degree_sequence() const {
    std::vector<uint32_t> deg(node_count_);
    for (uint32_t u = 0; u < node_count_; ++u) deg[u] = degree(u);
    return deg;
}

double Graph::mean_degree() const {
    if (node_count_ == 0) return 0.0;
    return 2.0 * static_cast<double>(edges_.size()) / node_count_;
}

Graph Graph::with_edge_probabilities(std::vector<double> probs) const {
    if (probs.size() != edges_.size())
        throw config_error("edge probability table size " + std::to_string(probs.size()) +
                           " != edge count " + std::to_string(edges_.size()));
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw config_error("edge probability outside [0,1]");
    Graph g = *this;
    g.edge_prob_ = std::move(probs);
    return g;
}

void DisjointSet::reset(uint32_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0u);
    size_.assign(n, 1u);
}

uint32_t DisjointSet::find(uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]]; // path halving
        x = parent_[x];
    }
    return x;
}

bool DisjointSet::unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

std::vector<std::vector<uint32_t>> connected_components(const Graph& g) {
    DisjointSet dsu(g.node_count());
    for (const Edge& e : g.edges()) dsu.unite(e.u, e.v);

    std::unordered_map<uint32_t, uint32_t> root_slot;
    std::vector<std::vector<uint32_t>> comps;
    for (uint32_t u = 0; u < g.node_count(); ++u) {
        const uint32_t r = dsu.find(u);
        auto [it, fresh] = root_slot.try_emplace(r, static_cast<uint32_t>(comps.size()));
        if (fresh) comps.emplace_back();
        comps[it->second].push_back(u);
    }
    // largest first; ties broken by smallest member (members are ascending)
    std::stable_sort(comps.begin(), comps.end(),
                     [](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
                         return a.size() != b.size() ? a.size() > b.size() : a[0] < b[0];
                     });
    return comps;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const uint32_t> nodes) {
    constexpr uint32_t kAbsent = UINT32_MAX;
    std::vector<uint32_t> to_new(g.node_count(), kAbsent);
    std::vector<uint32_t> to_parent(nodes.begin(), nodes.end());
    for (uint32_t i = 0; i < to_parent.size(); ++i) {
        const uint32_t u = to_parent[i];
        if (u >= g.node_count())
            throw config_error("induced_subgraph: node " + std::to_string(u) + " out of range");
        if (to_new[u] != kAbsent)
            throw config_error("induced_subgraph: node " + std::to_string(u) + " repeated");
        to_new[u] = i;
    }
    std::vector<Edge> edges;
    std::vector<double> probs;
    const bool weighted = g.has_edge_probabilities();
    const auto parent_probs = g.edge_probabilities();
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        if (to_new[u] != kAbsent && to_new[v] != kAbsent) {
            edges.push_back({to_new[u], to_new[v]});
            if (weighted) probs.push_back(parent_probs[e]);
        }
    }
    InducedSubgraph out;
    out.graph = Graph::from_edges(static_cast<uint32_t>(to_parent.size()), std::move(edges));
    if (weighted) out.graph = out.graph.with_edge_probabilities(std::move(probs));
    out.to_parent = std::move(to_parent);
    return out;
}

InducedSubgraph dominant_component(const Graph& g) {
    const auto comps = connected_components(g);
    if (comps.empty()) return {Graph::from_edges(0, {}), {}};
    return induced_subgraph(g, comps.front());
}

} // namespace cascadelab
