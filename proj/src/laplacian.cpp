#include "spantree/laplacian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spantree {

Eigen::MatrixXd laplacian_minor(const Graph& g, std::span<const int> vertices, int grounded) {
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int v : vertices) {
        if (v == grounded) continue;
        index[static_cast<std::size_t>(v)] = next++;
    }
    if (next != static_cast<int>(vertices.size()) - 1)
        throw std::invalid_argument("laplacian_minor: grounded vertex not in the list");

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(next, next);
    for (int v : vertices) {
        const int iv = index[static_cast<std::size_t>(v)];
        if (iv < 0) continue;  // grounded row and column dropped
        for (int w : g.neighbors(v)) {
            lap(iv, iv) += 1.0;  // full degree, whatever side w is on
            const int iw = index[static_cast<std::size_t>(w)];
            if (iw >= 0 && w > v) {
                lap(iv, iw) -= 1.0;
                lap(iw, iv) -= 1.0;
            }
        }
    }
    return lap;
}

std::optional<double> spd_log_det(const Eigen::MatrixXd& m, double pivot_floor_rel) {
    if (m.rows() == 0) return 0.0;  // empty minor: det of nothing is 1
    const double floor = pivot_floor_rel * m.diagonal().maxCoeff();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double pivot = ldlt.vectorD()(i);
        if (!(pivot > floor)) return std::nullopt;
        log_det += std::log(pivot);
    }
    return log_det;
}

}  // namespace spantree
