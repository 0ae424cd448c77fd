#pragma once

#include <iosfwd>
#include <string>

#include "spantree/graph.hpp"

namespace spantree {

// Dump format: one header line "n m", then one "a b" line per edge in
// lexicographic order.
std::string format_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

}  // namespace spantree
