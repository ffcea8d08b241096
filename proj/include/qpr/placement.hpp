#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "qpr/kamada_kawai.hpp"
#include "qpr/louvain.hpp"
#include "qpr/planarity.hpp"
#include "qpr/raster.hpp"

namespace qpr {

struct PlacementConfig {
    std::uint64_t seed = 1;
    int grid_size = 500;
    SpringOptions spring;
};

struct PlacementResult {
    Layout2D layout;
    std::optional<PlanarSubgraph> mps;  // absent when custom positions were used
    CommunityAssignment communities;
};

// Community centroids come from a spring layout of the community quotient
// graph; each community is then laid out on its own around its centroid.
inline std::vector<Point2> preliminary_coordinates(const Graph& graph, const CommunityAssignment& comm,
                                                   const SpringOptions& opt = {}) {
    const std::size_t n = graph.num_nodes;
    std::size_t count = 0;
    for (auto c : comm) count = std::max(count, c + 1);

    std::vector<std::vector<std::size_t>> members(count);
    for (std::size_t v = 0; v < n; ++v) members[comm[v]].push_back(v);

    std::vector<std::vector<Point2>> inner(count);
    double radius = 0;
    std::vector<Point2> centre(count);
    for (std::size_t c = 0; c < count; ++c) {
        const auto& mem = members[c];
        std::vector<std::size_t> local(n, 0);
        for (std::size_t i = 0; i < mem.size(); ++i) local[mem[i]] = i;
        Graph sub;
        sub.num_nodes = mem.size();
        for (const auto& e : graph.edges)
            if (comm[e.u] == c && comm[e.v] == c && e.u != e.v) sub.edges.push_back({local[e.u], local[e.v]});
        inner[c] = kamada_kawai(sub, opt);
        Point2 mean;
        for (const auto& p : inner[c]) {
            mean.x += p.x / static_cast<double>(mem.size());
            mean.y += p.y / static_cast<double>(mem.size());
        }
        centre[c] = mean;
        for (const auto& p : inner[c]) radius = std::max(radius, std::hypot(p.x - mean.x, p.y - mean.y));
    }

    Graph quotient;
    quotient.num_nodes = count;
    {
        std::vector<std::pair<std::size_t, std::size_t>> links;
        for (const auto& e : graph.edges)
            if (comm[e.u] != comm[e.v])
                links.emplace_back(std::min(comm[e.u], comm[e.v]), std::max(comm[e.u], comm[e.v]));
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
        for (const auto& [a, b] : links) quotient.edges.push_back({a, b});
    }
    SpringOptions qopt = opt;
    qopt.edge_length = opt.edge_length * (2 * radius + 1);
    qopt.gutter = opt.gutter + 2 * radius;
    const auto cpos = kamada_kawai(quotient, qopt);

    std::vector<Point2> out(n);
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t i = 0; i < members[c].size(); ++i)
            out[members[c][i]] = {cpos[c].x + inner[c][i].x - centre[c].x, cpos[c].y + inner[c][i].y - centre[c].y};
    return out;
}

// Intra-community edges first, then inter-community; each group by ascending
// length with ties kept in edge-id order.
inline std::vector<std::size_t> order_edges_for_mps(const Graph& graph, const CommunityAssignment& comm,
                                                    const std::vector<Point2>& coords) {
    std::vector<std::size_t> ids(graph.edges.size());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    auto length = [&](std::size_t id) {
        const auto& e = graph.edges[id];
        return std::hypot(coords[e.u].x - coords[e.v].x, coords[e.u].y - coords[e.v].y);
    };
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        const bool ia = comm[graph.edges[a].u] == comm[graph.edges[a].v];
        const bool ib = comm[graph.edges[b].u] == comm[graph.edges[b].v];
        if (ia != ib) return ia;
        return length(a) < length(b);
    });
    return ids;
}

inline std::vector<Point2> to_points(const std::vector<GridPoint>& pos) {
    std::vector<Point2> out;
    out.reserve(pos.size());
    for (const auto& p : pos) out.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    return out;
}

inline PlacementResult place(const Graph& graph, const PlacementConfig& cfg,
                             const std::optional<std::vector<GridPoint>>& custom = std::nullopt) {
    PlacementResult res;
    if (custom) {
        if (custom->size() != graph.num_nodes)
            fail(ErrorKind::parameter, "custom positions cover " + std::to_string(custom->size()) + " of " +
                                           std::to_string(graph.num_nodes) + " nodes");
        res.layout = normalize(compact(rasterize(to_points(*custom))), cfg.grid_size);
        return res;
    }
    res.communities = detect_communities(graph, cfg.seed);
    const auto prelim = preliminary_coordinates(graph, res.communities, cfg.spring);
    const auto order = order_edges_for_mps(graph, res.communities, prelim);
    res.mps = extract_mps(graph, order);
    Graph planar;
    planar.num_nodes = graph.num_nodes;
    for (auto id : res.mps->kept) planar.edges.push_back(graph.edges[id]);
    const auto coords = kamada_kawai(planar, cfg.spring);
    res.layout = normalize(compact(rasterize(coords)), cfg.grid_size);
    return res;
}

}  // namespace qpr
