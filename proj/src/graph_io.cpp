#include "spantree/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spantree {

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
    return out.str();
}

Graph parse_graph(std::istream& in) {
    int n = 0;
    std::int64_t m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("parse_graph: bad header");
    Graph g(n);
    for (std::int64_t i = 0; i < m; ++i) {
        int a = 0, b = 0;
        if (!(in >> a >> b)) throw std::invalid_argument("parse_graph: truncated edge list");
        g.add_edge(a, b);
    }
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_graph: cannot open " + path);
    return parse_graph(in);
}

}  // namespace spantree
