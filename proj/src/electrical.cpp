#include "spantree/electrical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spantree/errors.hpp"
#include "spantree/laplacian.hpp"

namespace spantree {

double ElectricalSolution::current(const Graph& g, int u, int v) const {
    if (!g.has_edge(u, v)) throw std::invalid_argument("current: not an edge");
    const Edge e{u, v};
    const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
    const auto idx = static_cast<std::size_t>(it - g.edges().begin());
    const double i_ab = edge_currents[idx];
    return (u == e.a) ? i_ab : -i_ab;
}

ElectricalSolution solve_unit_current(const Graph& g, int a, int b) {
    const int n = g.vertex_count();
    if (a == b) throw std::invalid_argument("solve_unit_current: source equals sink");
    if (a < 0 || b < 0 || a >= n || b >= n)
        throw std::invalid_argument("solve_unit_current: vertex out of range");

    const std::vector<int> comp = component_of(g, a);
    if (!std::binary_search(comp.begin(), comp.end(), b))
        throw DisconnectedError("solve_unit_current: no path between source and sink");

    // Ground b: delete its row/column and solve L' v = e_a. The -1 of the
    // extraction lives in the deleted row.
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v : comp)
        if (v != b) index[static_cast<std::size_t>(v)] = next++;

    const Eigen::MatrixXd lap = laplacian_minor(g, comp, b);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(next);
    rhs(index[static_cast<std::size_t>(a)]) = 1.0;

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(lap);
    const double floor = 1e-12 * lap.diagonal().maxCoeff();
    if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= floor).any())
        throw DisconnectedError("solve_unit_current: numerically disconnected");
    const Eigen::VectorXd x = ldlt.solve(rhs);

    const double residual = (lap * x - rhs).lpNorm<Eigen::Infinity>();
    if (!(residual <= 1e-9 * n))
        throw std::runtime_error("solve_unit_current: residual above tolerance");

    ElectricalSolution sol;
    sol.source = a;
    sol.sink = b;
    sol.voltages = Eigen::VectorXd::Zero(n);
    for (int v : comp)
        if (v != b) sol.voltages(v) = x(index[static_cast<std::size_t>(v)]);
    sol.edge_currents.resize(g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge& e = g.edges()[i];
        sol.edge_currents[i] = sol.voltages(e.a) - sol.voltages(e.b);  // unit resistance
    }
    return sol;
}

Resistance effective_resistance(const Graph& g, int a, int b) {
    const ElectricalSolution sol = solve_unit_current(g, a, b);
    return Resistance{sol.voltages(a)};
}

double edge_inclusion_probability(const Graph& g, Edge e) {
    if (!g.has_edge(e.a, e.b)) throw std::invalid_argument("edge_inclusion_probability: not an edge");
    if (!is_connected(g)) throw DisconnectedError("edge_inclusion_probability: graph disconnected");
    const ElectricalSolution sol = solve_unit_current(g, e.a, e.b);
    return std::clamp(sol.current(g, e.a, e.b), 0.0, 1.0);
}

Resistance combine_series(std::span<const Resistance> rs) {
    if (rs.empty()) throw std::invalid_argument("combine_series: empty chain");
    double total = 0.0;
    for (const Resistance& r : rs) {
        if (!(r.ohms > 0.0)) throw std::invalid_argument("combine_series: nonpositive resistance");
        total += r.ohms;
    }
    return Resistance{total};
}

Resistance combine_parallel(std::span<const Resistance> rs) {
    if (rs.empty()) throw std::invalid_argument("combine_parallel: empty bundle");
    double recip = 0.0;
    for (const Resistance& r : rs) {
        if (!(r.ohms > 0.0)) throw std::invalid_argument("combine_parallel: nonpositive resistance");
        recip += 1.0 / r.ohms;
    }
    return Resistance{1.0 / recip};
}

double two_path_inclusion_bound(const Graph& g, Edge e) {
    if (!g.has_edge(e.a, e.b)) throw std::invalid_argument("two_path_inclusion_bound: not an edge");
    int common = 0;
    for (int w : g.neighbors(e.a))
        if (w != e.b && g.has_edge(w, e.b)) ++common;
    return 2.0 / (static_cast<double>(common) + 2.0);
}

}  // namespace spantree
