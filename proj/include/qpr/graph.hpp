#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

namespace qpr {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    bool operator==(const Edge&) const = default;
};

// Undirected multigraph-free simple graph; edge ids are vector indices.
struct Graph {
    std::size_t num_nodes = 0;
    std::vector<Edge> edges;

    // Per node, the list of incident edge ids.
    std::vector<std::vector<std::size_t>> incidence() const {
        std::vector<std::vector<std::size_t>> inc(num_nodes);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            inc[edges[e].u].push_back(e);
            inc[edges[e].v].push_back(e);
        }
        return inc;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(num_nodes);
        for (const auto& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    std::size_t degree(std::size_t node) const {
        std::size_t d = 0;
        for (const auto& e : edges) d += (e.u == node) + (e.v == node);
        return d;
    }
};

// Connected components as lists of nodes in ascending order; components
// are ordered by their smallest node.
inline std::vector<std::vector<std::size_t>> connected_components(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<int> seen(n, 0);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const std::size_t x = q.front();
            q.pop();
            comp.push_back(x);
            for (std::size_t y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    q.push(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Unweighted shortest-path distances from src (-1 when unreachable).
inline std::vector<int> bfs_distances(std::size_t src, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<std::size_t> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop();
        for (std::size_t y : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return dist;
}

}  // namespace qpr
