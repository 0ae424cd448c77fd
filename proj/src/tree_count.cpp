#include "spantree/tree_count.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spantree/laplacian.hpp"

namespace spantree {

LogValue cayley_log_count(int n) {
    if (n < 1) throw std::invalid_argument("cayley_log_count: n must be >= 1");
    return LogValue::from_log((static_cast<double>(n) - 2.0) * std::log(static_cast<double>(n)));
}

LogValue matrix_tree_log_count(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 1) return LogValue::from_log(0.0);  // the empty tree
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const Eigen::MatrixXd minor = laplacian_minor(g, all, n - 1);
    const auto log_det = spd_log_det(minor);
    if (!log_det) return LogValue::zero();  // singular minor: disconnected
    return LogValue::from_log(*log_det);
}

namespace {

// Union-find with undo, for backtracking over edge subsets.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int v) const {
        while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
        return v;
    }

    // Returns false (and records nothing) when a and b are already joined.
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size_[static_cast<std::size_t>(ra)] < size_[static_cast<std::size_t>(rb)]) std::swap(ra, rb);
        parent_[static_cast<std::size_t>(rb)] = ra;
        size_[static_cast<std::size_t>(ra)] += size_[static_cast<std::size_t>(rb)];
        undo_.push_back({ra, rb});
        return true;
    }

    void undo() {
        const auto [ra, rb] = undo_.back();
        undo_.pop_back();
        parent_[static_cast<std::size_t>(rb)] = rb;
        size_[static_cast<std::size_t>(ra)] -= size_[static_cast<std::size_t>(rb)];
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<std::pair<int, int>> undo_;
};

void enumerate_rec(const EdgeSet& edges, std::size_t idx, int needed, RollbackUnionFind& uf,
                   EdgeSet& chosen, std::vector<EdgeSet>& out) {
    if (needed == 0) {
        out.push_back(chosen);
        return;
    }
    if (edges.size() - idx < static_cast<std::size_t>(needed)) return;
    const Edge& e = edges[idx];
    if (uf.unite(e.a, e.b)) {
        chosen.push_back(e);
        enumerate_rec(edges, idx + 1, needed - 1, uf, chosen, out);
        chosen.pop_back();
        uf.undo();
    }
    enumerate_rec(edges, idx + 1, needed, uf, chosen, out);
}

}  // namespace

std::vector<EdgeSet> enumerate_spanning_trees(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 9) throw std::invalid_argument("enumerate_spanning_trees: too large (n > 9)");
    if (n == 1) return {EdgeSet{}};
    RollbackUnionFind uf(n);
    EdgeSet chosen;
    chosen.reserve(static_cast<std::size_t>(n) - 1);
    std::vector<EdgeSet> out;
    enumerate_rec(g.edges(), 0, n - 1, uf, chosen, out);
    return out;  // edge subsets inherit lexicographic order
}

LogValue grimmett_log_bound(int n, std::int64_t m) {
    if (n < 2) throw std::invalid_argument("grimmett_log_bound: n must be >= 2");
    if (m < 0) throw std::invalid_argument("grimmett_log_bound: negative edge count");
    if (m == 0) return LogValue::zero();
    const double nn = static_cast<double>(n);
    return LogValue::from_log(-std::log(nn) +
                              (nn - 1.0) * std::log(2.0 * static_cast<double>(m) / (nn - 1.0)));
}

}  // namespace spantree
