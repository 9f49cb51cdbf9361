#pragma once

// Undirected simple graph with CSR adjacency, plus the union-find used by the
// percolation machinery.

#include <cstdint>
#include <span>
#include <vector>

namespace cascadelab {

struct Edge {
    uint32_t u;
    uint32_t v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
  public:
    Graph() = default;

    // Takes any mix of (u,v)/(v,u); canonicalizes to u < v and sorts.
    // Throws config_error on out-of-range endpoints, self-loops or duplicates.
    static Graph from_edges(uint32_t node_count, std::vector<Edge> edges);

    uint32_t node_count() const { return node_count_; }
    uint32_t edge_count() const { return static_cast<uint32_t>(edges_.size()); }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(uint32_t e) const { return edges_[e]; }

    std::span<const uint32_t> neighbors(uint32_t u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    // incident edge ids, aligned with neighbors(u)
    std::span<const uint32_t> incident_edges(uint32_t u) const {
        return {adj_edge_.data() + offsets_[u], adj_edge_.data() + offsets_[u + 1]};
    }
    uint32_t degree(uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }

    std::vector<uint32_t> degree_sequence() const;
    double mean_degree() const;

    // Optional per-edge transmission probabilities (noisy-edge model).
    bool has_edge_probabilities() const { return !edge_prob_.empty(); }
    std::span<const double> edge_probabilities() const { return edge_prob_; }
    Graph with_edge_probabilities(std::vector<double> probs) const;

  private:
    void build_adjacency();

    uint32_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<uint32_t> offsets_;   // node_count_+1
    std::vector<uint32_t> adj_;       // 2*edge_count
    std::vector<uint32_t> adj_edge_;  // edge id per adjacency slot
    std::vector<double> edge_prob_;   // empty or edge_count
};

// Union-find with union-by-size and path halving. reset() reuses capacity.
class DisjointSet {
  public:
    DisjointSet() = default;
    explicit DisjointSet(uint32_t n) { reset(n); }

    void reset(uint32_t n);
    uint32_t find(uint32_t x);

    // false if already united
    bool unite(uint32_t a, uint32_t b);

    // size of the set containing x
    uint32_t component_size(uint32_t x) { return size_[find(x)]; }

    uint32_t node_count() const { return static_cast<uint32_t>(parent_.size()); }

  private:
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> size_;
};

// Connected components as node lists, largest first; ties by smallest node id.
std::vector<std::vector<uint32_t>> connected_components(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<uint32_t> to_parent;  // new id -> parent id
};

// Subgraph induced by `nodes` (need not be sorted; must be distinct).
InducedSubgraph induced_subgraph(const Graph& g, std::span<const uint32_t> nodes);

// Largest connected component (ties by smallest id), relabeled densely.
InducedSubgraph dominant_component(const Graph& g);

} // namespace cascadelab
