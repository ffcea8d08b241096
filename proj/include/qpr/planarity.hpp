#pragma once

#include <numeric>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "qpr/graph.hpp"

namespace qpr {

struct PlanarSubgraph {
    std::vector<std::size_t> kept;      // edge ids, insertion order
    std::vector<std::size_t> rejected;  // edge ids, insertion order
};

inline bool is_planar(std::size_t num_nodes, const std::vector<Edge>& edges) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph g(num_nodes);
    for (const auto& e : edges) boost::add_edge(e.u, e.v, g);
    return boost::boyer_myrvold_planarity_test(g);
}

// Greedy single pass: an edge is kept when the kept set stays planar.
// Edges joining two different components of the kept set are always safe,
// and edge counts above 3V - 6 are rejected without a test.
inline PlanarSubgraph extract_mps(const Graph& graph, const std::vector<std::size_t>& order) {
    const std::size_t n = graph.num_nodes;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    PlanarSubgraph out;
    std::vector<Edge> kept;
    for (std::size_t id : order) {
        const Edge e = graph.edges[id];
        const std::size_t a = find(e.u), b = find(e.v);
        bool ok;
        if (a != b) {
            ok = true;
            parent[a] = b;
        } else if (n >= 3 && kept.size() + 1 > 3 * n - 6) {
            ok = false;
        } else {
            kept.push_back(e);
            ok = is_planar(n, kept);
            kept.pop_back();
        }
        if (ok) {
            kept.push_back(e);
            out.kept.push_back(id);
        } else {
            out.rejected.push_back(id);
        }
    }
    return out;
}

}  // namespace qpr
