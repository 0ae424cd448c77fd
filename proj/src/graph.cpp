#include "spantree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "spantree/rng.hpp"

namespace spantree {

Edge::Edge(int u, int v) : a(std::min(u, v)), b(std::max(u, v)) {
    if (u == v) throw std::invalid_argument("Edge: self-loop");
    if (u < 0 || v < 0) throw std::invalid_argument("Edge: negative vertex");
}

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
    adj_.resize(static_cast<std::size_t>(n));
    pair_bits_.assign(static_cast<std::size_t>(pair_count()), false);
}

Graph::Graph(int n, EdgeSet edges) : Graph(n) {
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges) add_edge(e.a, e.b);
}

std::int64_t Graph::pair_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::int64_t>(b) * (b - 1) / 2 + a;
}

void Graph::add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("add_edge: self-loop");
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::invalid_argument("add_edge: vertex out of range");
    if (a > b) std::swap(a, b);
    const auto idx = static_cast<std::size_t>(pair_index(a, b));
    if (pair_bits_[idx]) throw std::invalid_argument("add_edge: duplicate edge");
    pair_bits_[idx] = true;
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
    Edge e{a, b};
    if (edges_.empty() || edges_.back() < e) {
        edges_.push_back(e);
    } else {
        edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    }
}

bool Graph::has_edge(int a, int b) const {
    if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return false;
    return pair_bits_[static_cast<std::size_t>(pair_index(a, b))];
}

int Graph::degree(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("degree: vertex out of range");
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("neighbors: vertex out of range");
    return adj_[static_cast<std::size_t>(v)];
}

CoupledGraphSource::CoupledGraphSource(std::uint64_t seed_, double p_) : seed(seed_), p(p_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("CoupledGraphSource: p outside [0, 1]");
}

Graph make_complete(int n) {
    Graph g(n);
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a) g.add_edge(a, b);
    return g;
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_gnp: p outside [0, 1]");
    Graph g(n);
    SplitMix64 rng(derive_seed(seed, 0x676e70));
    // Pair order fixed (lexicographic) so a seed pins down the graph.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.next_unit() < p) g.add_edge(a, b);
    return g;
}

namespace {

Edge pair_from_index(std::int64_t idx) {
    // Invert idx = b(b-1)/2 + a, a < b.
    auto b = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (static_cast<std::int64_t>(b) * (b - 1) / 2 > idx) --b;
    while (static_cast<std::int64_t>(b + 1) * b / 2 <= idx) ++b;
    const auto a = static_cast<int>(idx - static_cast<std::int64_t>(b) * (b - 1) / 2);
    return Edge{a, b};
}

// Floyd's uniform m-subset of {0, ..., total-1}.
std::unordered_set<std::int64_t> sample_subset(std::int64_t total, std::int64_t m, SplitMix64& rng) {
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2 + 1);
    for (std::int64_t j = total - m; j < total; ++j) {
        const auto t = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return chosen;
}

}  // namespace

Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed) {
    Graph g(n);
    const std::int64_t total = g.pair_count();
    if (m < 0 || m > total) throw std::invalid_argument("gen_gnm: edge count out of range");
    SplitMix64 rng(derive_seed(seed, 0x676e6d));
    if (m == 0) return g;
    if (m == total) return make_complete(n);
    // Sample the smaller of the set and its complement.
    const bool complement = m > total / 2;
    const std::int64_t pick = complement ? total - m : m;
    const auto subset = sample_subset(total, pick, rng);
    std::vector<std::int64_t> indices;
    indices.reserve(static_cast<std::size_t>(m));
    if (complement) {
        for (std::int64_t i = 0; i < total; ++i)
            if (!subset.contains(i)) indices.push_back(i);
    } else {
        indices.assign(subset.begin(), subset.end());
        std::sort(indices.begin(), indices.end());
    }
    for (std::int64_t idx : indices) {
        const Edge e = pair_from_index(idx);
        g.add_edge(e.a, e.b);
    }
    return g;
}

Graph coupled_restrict(const CoupledGraphSource& source, int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coupled_edge_unit(source.seed, static_cast<std::uint32_t>(a),
                                  static_cast<std::uint32_t>(b)) < source.p)
                g.add_edge(a, b);
    return g;
}

std::int64_t union_size(std::span<const EdgeSet> trees) {
    EdgeSet all;
    std::size_t total = 0;
    for (const EdgeSet& t : trees) total += t.size();
    all.reserve(total);
    for (const EdgeSet& t : trees) all.insert(all.end(), t.begin(), t.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return static_cast<std::int64_t>(all.size());
}

std::pair<int, int> degree_stats(const Graph& g) {
    int lo = g.vertex_count(), hi = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int d = g.degree(v);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

std::vector<int> component_of(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("component_of: vertex out of range");
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> stack{v}, comp;
    seen[static_cast<std::size_t>(v)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int w : g.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

bool is_connected(const Graph& g) {
    return static_cast<int>(component_of(g, 0).size()) == g.vertex_count();
}

}  // namespace spantree
