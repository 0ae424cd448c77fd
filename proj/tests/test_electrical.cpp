#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>

#include "spantree/electrical.hpp"
#include "spantree/errors.hpp"
#include "spantree/tree_count.hpp"
#include "test_util.hpp"

using namespace spantree;

namespace {
Graph cycle(int n) {
    EdgeSet edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}
}  // namespace

TEST_CASE("solve_unit_current on a series chain") {
    // a(0) - c(1) - b(2): unit current through both edges, v(a) = 2.
    const Graph path(3, {Edge{0, 1}, Edge{1, 2}});
    const ElectricalSolution sol = solve_unit_current(path, 0, 2);
    CHECK(sol.voltages(0) == doctest::Approx(2.0));
    CHECK(sol.voltages(2) == doctest::Approx(0.0));
    CHECK(sol.current(path, 0, 1) == doctest::Approx(1.0));
    CHECK(sol.current(path, 1, 2) == doctest::Approx(1.0));
    CHECK(sol.current(path, 2, 1) == doctest::Approx(-1.0));
}

TEST_CASE("solve_unit_current on K_2") {
    const Graph k2 = make_complete(2);
    const ElectricalSolution sol = solve_unit_current(k2, 0, 1);
    CHECK(sol.voltages(0) == doctest::Approx(1.0));
    CHECK(sol.current(k2, 0, 1) == doctest::Approx(1.0));
}

TEST_CASE("solve_unit_current splits a C_4 as a 1:3 current divider") {
    const Graph c4 = cycle(4);
    const ElectricalSolution sol = solve_unit_current(c4, 0, 1);
    CHECK(sol.current(c4, 0, 1) == doctest::Approx(0.75));
    CHECK(sol.current(c4, 0, 3) == doctest::Approx(0.25));
    CHECK(sol.current(c4, 3, 2) == doctest::Approx(0.25));
}

TEST_CASE("solve_unit_current error paths") {
    const Graph two_parts(4, {Edge{0, 1}, Edge{2, 3}});
    CHECK_THROWS_AS(solve_unit_current(two_parts, 0, 2), DisconnectedError);
    CHECK_THROWS_AS(solve_unit_current(two_parts, 1, 1), std::invalid_argument);
    // Pair within one component of a disconnected graph still solves.
    const ElectricalSolution sol = solve_unit_current(two_parts, 0, 1);
    CHECK(sol.voltages(0) == doctest::Approx(1.0));
    CHECK(sol.voltages(2) == doctest::Approx(0.0));
}

TEST_CASE("effective_resistance basics") {
    CHECK(effective_resistance(make_complete(2), 0, 1).ohms == doctest::Approx(1.0));
    const Graph path(3, {Edge{0, 1}, Edge{1, 2}});
    CHECK(effective_resistance(path, 0, 2).ohms == doctest::Approx(2.0));
    CHECK(effective_resistance(make_complete(4), 0, 1).ohms == doctest::Approx(0.5));
}

TEST_CASE("effective_resistance is symmetric") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const Graph g = sptest::random_connected_graph(8, 0.5, rng);
        const int a = static_cast<int>(rng.next_below(8));
        int b = static_cast<int>(rng.next_below(8));
        if (b == a) b = (b + 1) % 8;
        CHECK(effective_resistance(g, a, b).ohms ==
              doctest::Approx(effective_resistance(g, b, a).ohms).epsilon(1e-10));
    }
}

TEST_CASE("edge_inclusion_probability on named graphs") {
    // A bridge lies in every spanning tree.
    const Graph bridged(6, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}, Edge{2, 3}, Edge{3, 4}, Edge{3, 5},
                            Edge{4, 5}});
    CHECK(edge_inclusion_probability(bridged, Edge{2, 3}) == doctest::Approx(1.0));
    CHECK(edge_inclusion_probability(make_complete(4), Edge{0, 1}) == doctest::Approx(0.5));
    CHECK(edge_inclusion_probability(cycle(4), Edge{0, 1}) == doctest::Approx(0.75));

    CHECK_THROWS_AS(edge_inclusion_probability(make_complete(4), Edge{4, 5}), std::invalid_argument);
    const Graph two_parts(4, {Edge{0, 1}, Edge{2, 3}});
    CHECK_THROWS_AS(edge_inclusion_probability(two_parts, Edge{0, 1}), DisconnectedError);
}

TEST_CASE("edge_inclusion_probability matches the enumeration oracle") {
    SplitMix64 rng(13);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 4 + static_cast<int>(rng.next_below(4));
        const Graph g = sptest::random_connected_graph(n, 0.55, rng);
        const auto trees = enumerate_spanning_trees(g);
        for (const Edge& e : g.edges()) {
            const double exact = sptest::oracle_inclusion(trees, e);
            CHECK(edge_inclusion_probability(g, e) == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("combine_series") {
    const std::array<Resistance, 2> two{Resistance{1.0}, Resistance{2.0}};
    CHECK(combine_series(two).ohms == doctest::Approx(3.0));
    const std::array<Resistance, 1> one{Resistance{7.5}};
    CHECK(combine_series(one).ohms == doctest::Approx(7.5));
    const std::array<Resistance, 3> three{Resistance{1.0}, Resistance{1.0}, Resistance{1.0}};
    CHECK(combine_series(three).ohms == doctest::Approx(3.0));
    CHECK_THROWS_AS(combine_series({}), std::invalid_argument);
}

TEST_CASE("combine_parallel") {
    const std::array<Resistance, 2> two{Resistance{1.0}, Resistance{2.0}};
    CHECK(combine_parallel(two).ohms == doctest::Approx(2.0 / 3.0));
    const std::array<Resistance, 1> one{Resistance{7.5}};
    CHECK(combine_parallel(one).ohms == doctest::Approx(7.5));
    const std::array<Resistance, 2> equal{Resistance{2.0}, Resistance{2.0}};
    CHECK(combine_parallel(equal).ohms == doctest::Approx(1.0));
    CHECK_THROWS_AS(combine_parallel({}), std::invalid_argument);
}

TEST_CASE("two_path_inclusion_bound") {
    for (int n : {4, 6, 10, 50}) {
        CHECK(two_path_inclusion_bound(make_complete(n), Edge{0, 1}) ==
              doctest::Approx(2.0 / n));
    }
    CHECK(two_path_inclusion_bound(cycle(4), Edge{0, 1}) == doctest::Approx(1.0));

    // K_4 minus {2,3}: edge {0,1} keeps both common neighbors, bound 1/2.
    const Graph k4_minus(4, {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{1, 3}});
    CHECK(two_path_inclusion_bound(k4_minus, Edge{0, 1}) == doctest::Approx(0.5));
    CHECK(two_path_inclusion_bound(k4_minus, Edge{0, 1}) >=
          edge_inclusion_probability(k4_minus, Edge{0, 1}));
    CHECK_THROWS_AS(two_path_inclusion_bound(make_complete(3), Edge{0, 3}), std::invalid_argument);
}

TEST_CASE("two-path bound dominates the true inclusion probability") {
    SplitMix64 rng(17);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = 5 + static_cast<int>(rng.next_below(20));
        const Graph g = sptest::random_connected_graph(n, 0.5, rng);
        for (const Edge& e : g.edges())
            CHECK(two_path_inclusion_bound(g, e) >= edge_inclusion_probability(g, e) - 1e-9);
    }
}

TEST_CASE("flow conservation and the Foster-style identity") {
    SplitMix64 rng(19);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 6 + static_cast<int>(rng.next_below(15));
        const Graph g = sptest::random_connected_graph(n, 0.5, rng);
        const int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int a = (b + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)))) % n;
        const ElectricalSolution sol = solve_unit_current(g, a, b);

        for (int v = 0; v < n; ++v) {
            if (v == a || v == b) continue;
            double net = 0.0;
            for (int w : g.neighbors(v)) net += sol.current(g, v, w);
            CHECK(std::abs(net) < 1e-9);
        }

        // Sum of inclusion probabilities over all edges is n - 1.
        double total = 0.0;
        for (const Edge& e : g.edges()) total += edge_inclusion_probability(g, e);
        CHECK(total == doctest::Approx(static_cast<double>(n - 1)).epsilon(1e-8));
    }
}

TEST_CASE("negative correlation of edge pairs, exhaustive n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        for (const Graph& g : sptest::all_connected_graphs(n)) {
            const auto trees = enumerate_spanning_trees(g);
            const auto total = static_cast<double>(trees.size());
            const auto& edges = g.edges();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                for (std::size_t j = i + 1; j < edges.size(); ++j) {
                    std::size_t ci = 0, cj = 0, cij = 0;
                    for (const EdgeSet& t : trees) {
                        const bool hi = sptest::tree_contains(t, edges[i]);
                        const bool hj = sptest::tree_contains(t, edges[j]);
                        ci += hi;
                        cj += hj;
                        cij += hi && hj;
                    }
                    CHECK(static_cast<double>(cij) / total <=
                          (ci / total) * (cj / total) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("Rayleigh monotonicity: deleting a non-bridge never lowers resistance") {
    SplitMix64 rng(23);
    int checked = 0;
    while (checked < 15) {
        const int n = 5 + static_cast<int>(rng.next_below(8));
        const Graph g = sptest::random_connected_graph(n, 0.6, rng);
        const Edge e = g.edges()[rng.next_below(g.edges().size())];
        EdgeSet remaining;
        for (const Edge& other : g.edges())
            if (other != e) remaining.push_back(other);
        const Graph without(n, remaining);
        if (!is_connected(without)) continue;  // e was a bridge
        ++checked;
        const int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int b = (a + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)))) % n;
        CHECK(effective_resistance(without, a, b).ohms >=
              effective_resistance(g, a, b).ohms - 1e-10);
    }
}
