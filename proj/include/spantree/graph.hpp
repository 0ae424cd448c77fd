#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spantree {

// Unordered vertex pair, normalized to a < b.
struct Edge {
    int a = 0;
    int b = 0;

    Edge() = default;
    Edge(int u, int v);

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A set of unordered vertex pairs kept sorted and duplicate-free.
using EdgeSet = std::vector<Edge>;

// Simple undirected labeled graph on vertices 0..n-1. Dense-friendly:
// adjacency lists plus a pair-indexed bitset for O(1) membership tests.
// Values are treated as immutable once built and are safe to share across
// concurrent workers.
class Graph {
public:
    explicit Graph(int n);
    Graph(int n, EdgeSet edges);

    int vertex_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
    std::int64_t pair_count() const noexcept {
        return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
    }

    // Inserts {a, b}; rejects self-loops, out-of-range vertices, duplicates.
    void add_edge(int a, int b);

    bool has_edge(int a, int b) const;
    int degree(int v) const;
    const std::vector<int>& neighbors(int v) const;

    // Edges in lexicographic order.
    const EdgeSet& edges() const noexcept { return edges_; }

    // Triangular index of the pair (a, b), a < b, within 0..pair_count().
    std::int64_t pair_index(int a, int b) const;

    friend bool operator==(const Graph& x, const Graph& y) {
        return x.n_ == y.n_ && x.edges_ == y.edges_;
    }

private:
    int n_ = 0;
    EdgeSet edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<bool> pair_bits_;
};

// The infinite coupled graph G(N, p). Restrictions to 0..n-1 are nested:
// the Bernoulli decision for pair {i, j} depends only on (seed, i, j).
struct CoupledGraphSource {
    std::uint64_t seed = 0;
    double p = 0.0;

    CoupledGraphSource(std::uint64_t seed_, double p_);
};

Graph make_complete(int n);
Graph gen_gnp(int n, double p, std::uint64_t seed);
Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed);
Graph coupled_restrict(const CoupledGraphSource& source, int n);

// Number of distinct edges in the union of the given sets.
std::int64_t union_size(std::span<const EdgeSet> trees);

// (min degree, max degree) over all vertices.
std::pair<int, int> degree_stats(const Graph& g);

bool is_connected(const Graph& g);

// Sorted vertices of the connected component containing v.
std::vector<int> component_of(const Graph& g, int v);

}  // namespace spantree
