#pragma once

#include <cstdint>
#include <vector>

#include "spantree/graph.hpp"
#include "spantree/log_value.hpp"

namespace spantree {

// log n^(n-2), the spanning-tree count of K_n.
LogValue cayley_log_count(int n);

// log of the spanning-tree count of g, via the log-determinant of a principal
// minor of the Laplacian. Disconnected graphs yield the zero sentinel.
LogValue matrix_tree_log_count(const Graph& g);

// Every spanning tree of g, as sorted edge sets. Exhaustive ground truth for
// small graphs; refuses n > 9.
std::vector<EdgeSet> enumerate_spanning_trees(const Graph& g);

// log of (1/n) (2m/(n-1))^(n-1), an upper bound on the spanning-tree count of
// any graph with n vertices and m edges.
LogValue grimmett_log_bound(int n, std::int64_t m);

}  // namespace spantree
