#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "spantree/graph.hpp"

namespace spantree {

// Combinatorial Laplacian L = D - A of a unit-resistance graph.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> laplacian_matrix(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> lap =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (const Edge& e : g.edges()) {
        lap(e.a, e.a) += Scalar(1);
        lap(e.b, e.b) += Scalar(1);
        lap(e.a, e.b) -= Scalar(1);
        lap(e.b, e.a) -= Scalar(1);
    }
    return lap;
}

// Laplacian restricted to the listed vertices, with `grounded` (a member of
// the list) deleted. The result is SPD iff the vertices induce a connected
// subgraph.
Eigen::MatrixXd laplacian_minor(const Graph& g, std::span<const int> vertices, int grounded);

// log det of an SPD matrix via the pivots of a robust LDLT factorization.
// Returns nullopt when any pivot falls below `pivot_floor_rel` times the
// largest diagonal entry, i.e. the matrix is numerically singular.
std::optional<double> spd_log_det(const Eigen::MatrixXd& m, double pivot_floor_rel = 1e-12);

}  // namespace spantree
