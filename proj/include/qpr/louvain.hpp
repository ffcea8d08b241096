#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "qpr/graph.hpp"
#include "qpr/rng.hpp"

namespace qpr {

using CommunityAssignment = std::vector<std::size_t>;

namespace detail {

struct WeightedGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // no self entries
    std::vector<double> self;                                      // weight of internal edges
    double total = 0;                                               // sum of all edge weights

    std::size_t size() const { return adj.size(); }
    double degree(std::size_t i) const {
        double d = 2 * self[i];
        for (const auto& [j, w] : adj[i]) d += w;
        return d;
    }
};

// One level of local moves. Returns the community of every node and whether anything moved.
inline bool louvain_level(const WeightedGraph& g, Rng& rng, std::vector<std::size_t>& comm) {
    const std::size_t n = g.size();
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), std::size_t{0});
    if (g.total <= 0) return false;
    std::vector<double> k(n), tot(n);
    for (std::size_t i = 0; i < n; ++i) tot[i] = k[i] = g.degree(i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);

    const double two_m = 2 * g.total;
    bool any_move = false;
    std::map<std::size_t, double> links;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i : order) {
            links.clear();
            for (const auto& [j, w] : g.adj[i]) links[comm[j]] += w;
            const std::size_t old = comm[i];
            tot[old] -= k[i];
            std::size_t best = old;
            double best_gain = links[old] - tot[old] * k[i] / two_m;
            for (const auto& [c, w] : links) {
                const double gain = w - tot[c] * k[i] / two_m;
                if (gain > best_gain + 1e-12) {
                    best = c;
                    best_gain = gain;
                }
            }
            tot[best] += k[i];
            comm[i] = best;
            if (best != old) moved = any_move = true;
        }
    }
    return any_move;
}

inline std::size_t renumber(std::vector<std::size_t>& comm) {
    std::map<std::size_t, std::size_t> ids;
    for (auto& c : comm) {
        auto it = ids.emplace(c, ids.size()).first;
        c = it->second;
    }
    return ids.size();
}

inline WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::size_t>& comm, std::size_t count) {
    WeightedGraph out;
    out.adj.resize(count);
    out.self.assign(count, 0.0);
    out.total = g.total;
    std::vector<std::map<std::size_t, double>> w(count);
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.self[comm[i]] += g.self[i];
        for (const auto& [j, x] : g.adj[i]) {
            if (comm[i] == comm[j]) {
                if (i < j) out.self[comm[i]] += x;
            } else {
                w[comm[i]][comm[j]] += x;
            }
        }
    }
    for (std::size_t c = 0; c < count; ++c)
        for (const auto& [d, x] : w[c]) out.adj[c].emplace_back(d, x);
    return out;
}

}  // namespace detail

// Multi-level Louvain modularity optimisation. Communities that end up
// internally disconnected are split into their connected parts. Ids are
// numbered by first appearance in node order.
inline CommunityAssignment detect_communities(const Graph& graph, std::uint64_t seed) {
    const std::size_t n = graph.num_nodes;
    detail::WeightedGraph g;
    g.adj.resize(n);
    g.self.assign(n, 0.0);
    for (const auto& e : graph.edges) {
        if (e.u == e.v) {
            g.self[e.u] += 1;
        } else {
            g.adj[e.u].emplace_back(e.v, 1.0);
            g.adj[e.v].emplace_back(e.u, 1.0);
        }
        g.total += 1;
    }
    CommunityAssignment assign(n);
    std::iota(assign.begin(), assign.end(), std::size_t{0});
    Rng rng(seed);
    for (;;) {
        std::vector<std::size_t> comm;
        if (!detail::louvain_level(g, rng, comm)) break;
        const std::size_t count = detail::renumber(comm);
        for (auto& a : assign) a = comm[a];
        if (count == g.size()) break;
        g = detail::aggregate(g, comm, count);
    }

    // Split disconnected communities.
    const auto adj = graph.adjacency();
    CommunityAssignment out(n, n);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (out[s] != n) continue;
        std::vector<std::size_t> stack{s};
        out[s] = next;
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adj[x])
                if (out[y] == n && assign[y] == assign[s]) {
                    out[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return out;
}

}  // namespace qpr
