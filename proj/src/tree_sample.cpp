#include "spantree/tree_sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spantree/errors.hpp"
#include "spantree/rng.hpp"

namespace spantree {

namespace detail {

UniformTree wilson_sample_unchecked(const Graph& g, std::uint64_t seed) {
    const int n = g.vertex_count();
    SplitMix64 rng(seed);
    std::vector<int> next(static_cast<std::size_t>(n), -1);
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    in_tree[0] = 1;  // root

    for (int start = 1; start < n; ++start) {
        if (in_tree[static_cast<std::size_t>(start)]) continue;
        // Random walk until the tree is hit; overwriting next[] erases loops.
        int u = start;
        while (!in_tree[static_cast<std::size_t>(u)]) {
            const auto& nbrs = g.neighbors(u);
            const int step = nbrs[rng.next_below(nbrs.size())];
            next[static_cast<std::size_t>(u)] = step;
            u = step;
        }
        for (u = start; !in_tree[static_cast<std::size_t>(u)]; u = next[static_cast<std::size_t>(u)])
            in_tree[static_cast<std::size_t>(u)] = 1;
    }

    UniformTree tree;
    tree.parent = std::move(next);
    tree.parent[0] = -1;
    tree.edges.reserve(static_cast<std::size_t>(n) - 1);
    for (int v = 1; v < n; ++v) tree.edges.emplace_back(v, tree.parent[static_cast<std::size_t>(v)]);
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

}  // namespace detail

UniformTree wilson_sample(const Graph& g, std::uint64_t seed) {
    if (!is_connected(g)) throw DisconnectedError("wilson_sample: graph disconnected");
    return detail::wilson_sample_unchecked(g, seed);
}

std::vector<UniformTree> sample_k_trees(const Graph& g, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_k_trees: k must be >= 1");
    if (!is_connected(g)) throw DisconnectedError("sample_k_trees: graph disconnected");
    std::vector<UniformTree> trees;
    trees.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        trees.push_back(detail::wilson_sample_unchecked(g, derive_seed(seed, static_cast<std::uint64_t>(i))));
    return trees;
}

int tree_max_degree(const UniformTree& t) {
    const auto n = t.parent.size();
    std::vector<int> deg(n, 0);
    for (const Edge& e : t.edges) {
        ++deg[static_cast<std::size_t>(e.a)];
        ++deg[static_cast<std::size_t>(e.b)];
    }
    return *std::max_element(deg.begin(), deg.end());
}

double moon_tail_bound(int n, int d) {
    if (n < 2) throw std::invalid_argument("moon_tail_bound: n must be >= 2");
    if (d < 1) throw std::invalid_argument("moon_tail_bound: d must be >= 1");
    const double log_bound = std::log(static_cast<double>(n)) - std::lgamma(static_cast<double>(d) + 1.0);
    return std::min(1.0, std::exp(log_bound));
}

}  // namespace spantree
