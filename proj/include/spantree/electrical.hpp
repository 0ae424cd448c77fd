#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spantree/graph.hpp"

namespace spantree {

// Resistance in ohms. Edges of a graph always carry unit resistance; this
// type exists for abstract series/parallel combination.
struct Resistance {
    double ohms = 1.0;
};

// Voltages and currents of a unit current injected at `source` and extracted
// at `sink`, with v(sink) = 0. Currents are stored per edge of the solved
// graph, in the graph's edge order, oriented from e.a to e.b; the reverse
// orientation is the negation.
struct ElectricalSolution {
    int source = -1;
    int sink = -1;
    Eigen::VectorXd voltages;
    std::vector<double> edge_currents;

    // Signed current from u to v along the edge {u, v} of g.
    double current(const Graph& g, int u, int v) const;
};

// Solves the Laplacian system for a unit current from a to b. Vertices
// outside the component of a and b keep voltage 0 and carry no current.
ElectricalSolution solve_unit_current(const Graph& g, int a, int b);

// v(a) - v(b) under unit current, i.e. the effective resistance of the
// unit-resistance network between a and b.
Resistance effective_resistance(const Graph& g, int a, int b);

// Probability that a uniform spanning tree of g contains e; equals the
// current through e when a unit current is driven across its endpoints.
double edge_inclusion_probability(const Graph& g, Edge e);

Resistance combine_series(std::span<const Resistance> rs);
Resistance combine_parallel(std::span<const Resistance> rs);

// Upper bound 2/(c+2) on edge_inclusion_probability(g, e), where c is the
// number of common neighbors of e's endpoints: the direct edge in parallel
// with c two-edge paths embeds in g, and dropping the rest of g can only
// raise the current through e.
double two_path_inclusion_bound(const Graph& g, Edge e);

}  // namespace spantree
