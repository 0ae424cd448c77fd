#pragma once

#include <cstdint>
#include <vector>

#include "spantree/graph.hpp"

namespace spantree {

// A spanning tree sampled uniformly at random, rooted at vertex 0.
// parent[v] is v's neighbor toward the root; parent[0] = -1.
struct UniformTree {
    EdgeSet edges;            // sorted, size n-1
    std::vector<int> parent;  // size n
};

// Wilson's loop-erased random walk sampler. The law is exactly uniform over
// the spanning trees of g; same (g, seed) gives the same tree.
UniformTree wilson_sample(const Graph& g, std::uint64_t seed);

// k independent uniform spanning trees, one derived sub-stream per tree.
std::vector<UniformTree> sample_k_trees(const Graph& g, int k, std::uint64_t seed);

int tree_max_degree(const UniformTree& t);

// min(1, n / d!), an upper bound on P[max degree of a uniform spanning tree
// of K_n exceeds d]. d! is evaluated in the log domain.
double moon_tail_bound(int n, int d);

namespace detail {
// Sampling core without the connectivity pre-check; callers must have
// verified g is connected (otherwise the walk need not terminate).
UniformTree wilson_sample_unchecked(const Graph& g, std::uint64_t seed);
}  // namespace detail

}  // namespace spantree
