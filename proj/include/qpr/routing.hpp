#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qpr/css_code.hpp"
#include "qpr/planarity.hpp"
#include "qpr/raster.hpp"

namespace qpr {

struct RoutingConfig {
    int grid_size = 500;
    int edge_margin = 1;
    int node_size = 1;
    int max_bumps = 10;
    std::optional<int> max_tsvs;  // unlimited when empty
    double max_length_factor = 1000;
    int max_tiers = 64;           // highest tier index above the qubit tier
    double bump_penalty = 0.01;
};

struct Cell3 {
    int x = 0, y = 0, z = 0;
    auto operator<=>(const Cell3&) const = default;
};

enum class RouteMethod { straight, astar };

inline const char* to_string(RouteMethod m) { return m == RouteMethod::straight ? "straight" : "astar"; }

struct RoutedEdge {
    std::size_t id = 0;
    std::size_t u = 0, v = 0;
    int tier = 0;
    std::vector<Cell3> path;
    int bumps = 0;
    int tsvs = 0;
    double length = 0;
    RouteMethod method = RouteMethod::straight;
};

class RoutingError : public Error {
public:
    RoutingError(const std::string& what, std::vector<std::size_t> unrouted)
        : Error(ErrorKind::routing, what), unrouted_(std::move(unrouted)) {}
    const std::vector<std::size_t>& unrouted() const { return unrouted_; }

private:
    std::vector<std::size_t> unrouted_;
};

// Cells touched by the segment between two cell centres, in walking order.
// Exact corner crossings include both side cells.
inline std::vector<GridPoint> supercover(GridPoint a, GridPoint b) {
    const int nx = std::abs(b.x - a.x), ny = std::abs(b.y - a.y);
    const int sx = b.x > a.x ? 1 : -1, sy = b.y > a.y ? 1 : -1;
    std::vector<GridPoint> out{a};
    GridPoint p = a;
    for (int ix = 0, iy = 0; ix < nx || iy < ny;) {
        const long long decision = static_cast<long long>(1 + 2 * ix) * ny - static_cast<long long>(1 + 2 * iy) * nx;
        if (decision == 0) {
            out.push_back({p.x + sx, p.y});
            out.push_back({p.x, p.y + sy});
            p.x += sx;
            p.y += sy;
            ++ix;
            ++iy;
        } else if (decision < 0) {
            p.x += sx;
            ++ix;
        } else {
            p.y += sy;
            ++iy;
        }
        out.push_back(p);
    }
    return out;
}

// Occupancy of one tier: two layers (one on the qubit tier). Zones around
// node cells live on z = 0 and admit only nets incident to every owning node;
// inside them nothing is marked.
class TierGrid {
public:
    TierGrid(int tier, int size, int layers)
        : tier_(tier), size_(size), layers_(layers),
          owner_(static_cast<std::size_t>(size) * size * layers, -1),
          halo_(static_cast<std::size_t>(size) * size * layers, -1),
          zone_(static_cast<std::size_t>(size) * size, -1) {}

    int tier() const { return tier_; }
    int size() const { return size_; }
    int layers() const { return layers_; }

    bool inside(int x, int y, int z) const { return x >= 0 && y >= 0 && x < size_ && y < size_ && z >= 0 && z < layers_; }
    std::size_t index(int x, int y, int z) const {
        return (static_cast<std::size_t>(z) * size_ + static_cast<std::size_t>(y)) * size_ + static_cast<std::size_t>(x);
    }

    void add_node(std::size_t node, GridPoint p, int radius) {
        for (int x = p.x - radius; x <= p.x + radius; ++x)
            for (int y = p.y - radius; y <= p.y + radius; ++y) {
                if (!inside(x, y, 0)) continue;
                auto& z = zone_[index(x, y, 0)];
                const int id = static_cast<int>(node);
                if (z == -1) {
                    z = id;
                } else if (z >= 0 && z != id) {
                    multi_[index(x, y, 0)] = {static_cast<std::size_t>(z), node};
                    z = -2;
                } else if (z == -2) {
                    multi_[index(x, y, 0)].push_back(node);
                }
            }
    }

    bool in_zone(int x, int y) const { return zone_[index(x, y, 0)] != -1; }

    // True when the zone cell belongs to node (possibly shared).
    bool zone_has(int x, int y, std::size_t node) const {
        const int z = zone_[index(x, y, 0)];
        if (z >= 0) return static_cast<std::size_t>(z) == node;
        if (z == -2) {
            const auto& m = multi_.at(index(x, y, 0));
            return std::find(m.begin(), m.end(), node) != m.end();
        }
        return false;
    }

    bool passable(std::size_t net, std::size_t u, std::size_t v, int x, int y, int z) const {
        if (!inside(x, y, z)) return false;
        if (z == 0) {
            const int zn = zone_[index(x, y, 0)];
            if (zn >= 0) return static_cast<std::size_t>(zn) == u || static_cast<std::size_t>(zn) == v;
            if (zn == -2) {
                for (auto o : multi_.at(index(x, y, 0)))
                    if (o != u && o != v) return false;
                return true;
            }
        }
        const std::size_t i = index(x, y, z);
        return owner_[i] == -1 && (halo_[i] == -1 || halo_[i] == static_cast<int>(net));
    }

    bool has_trace(int x, int y, int z) const { return inside(x, y, z) && owner_[index(x, y, z)] != -1; }
    int owner(int x, int y, int z) const { return owner_[index(x, y, z)]; }

    void commit(std::size_t net, const std::vector<Cell3>& path, int margin) {
        const int id = static_cast<int>(net);
        for (const auto& c : path) {
            if (c.z == 0 && in_zone(c.x, c.y)) continue;
            owner_[index(c.x, c.y, c.z)] = id;
        }
        for (const auto& c : path) {
            if (c.z == 0 && in_zone(c.x, c.y)) continue;
            for (int x = c.x - margin; x <= c.x + margin; ++x)
                for (int y = c.y - margin; y <= c.y + margin; ++y) {
                    if (!inside(x, y, c.z)) continue;
                    if (c.z == 0 && in_zone(x, y)) continue;
                    const std::size_t i = index(x, y, c.z);
                    if (owner_[i] == -1 && halo_[i] == -1) halo_[i] = id;
                }
        }
    }

private:
    int tier_, size_, layers_;
    std::vector<int> owner_;
    std::vector<int> halo_;
    std::vector<int> zone_;  // -1 none, -2 shared, else node id
    std::map<std::size_t, std::vector<std::size_t>> multi_;
};

struct NetRequest {
    std::size_t id = 0;
    std::size_t u = 0, v = 0;
    GridPoint pu, pv;
};

inline double path_length(const std::vector<Cell3>& path) {
    double len = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const int dx = std::abs(path[i].x - path[i - 1].x), dy = std::abs(path[i].y - path[i - 1].y);
        len += (dx && dy) ? std::sqrt(2.0) : (dx || dy) ? 1.0 : 0.0;
    }
    return len;
}

inline int count_bumps(const std::vector<Cell3>& path) {
    int b = 0;
    for (std::size_t i = 1; i < path.size(); ++i) b += path[i].z != path[i - 1].z;
    return b;
}

// Walks the supercover of the segment starting on z = 0. At a blocked cell
// the route hops to the other layer at the last free cell, and drops back to
// z = 0 on entering the target's zone.
inline std::optional<std::vector<Cell3>> straight_route(const TierGrid& g, const NetRequest& net, int max_bumps) {
    const auto cells = supercover(net.pu, net.pv);
    std::vector<Cell3> path{{net.pu.x, net.pu.y, 0}};
    if (!g.passable(net.id, net.u, net.v, net.pu.x, net.pu.y, 0)) return std::nullopt;
    int z = 0, bumps = 0;
    auto ok = [&](int x, int y, int layer) { return g.passable(net.id, net.u, net.v, x, y, layer); };
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const auto c = cells[i];
        if (!ok(c.x, c.y, z)) {
            if (g.layers() < 2) return std::nullopt;
            const Cell3 last = path.back();
            if (!ok(last.x, last.y, 1 - z) || !ok(c.x, c.y, 1 - z)) return std::nullopt;
            z = 1 - z;
            path.push_back({last.x, last.y, z});
            ++bumps;
        }
        path.push_back({c.x, c.y, z});
        if (z == 1 && g.zone_has(c.x, c.y, net.v) && ok(c.x, c.y, 0)) {
            z = 0;
            path.push_back({c.x, c.y, 0});
            ++bumps;
        }
    }
    if (z != 0 || bumps > max_bumps) return std::nullopt;
    return path;
}

// Reusable A* state sized for one tier grid.
class AStarRouter {
public:
    explicit AStarRouter(const TierGrid& g)
        : g_(g), cost_(static_cast<std::size_t>(g.size()) * g.size() * g.layers()), stamp_(cost_.size(), 0),
          closed_(cost_.size(), 0), parent_(cost_.size(), -1) {}

    // Minimum-cost path: cardinal 1, diagonal sqrt(2), layer change `penalty`.
    // Diagonal steps may not squeeze between trace cells. Successors whose
    // cost plus heuristic exceeds `cost_limit` are discarded.
    std::optional<std::vector<Cell3>> route(const NetRequest& net, double penalty, double cost_limit) {
        ++epoch_;
        const int S = g_.size();
        auto h = [&](int x, int y) { return std::hypot(double(x - net.pv.x), double(y - net.pv.y)); };
        using Item = std::tuple<double, double, std::size_t>;  // f, h, index
        std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
        const std::size_t start = g_.index(net.pu.x, net.pu.y, 0);
        const std::size_t goal = g_.index(net.pv.x, net.pv.y, 0);
        if (!g_.passable(net.id, net.u, net.v, net.pu.x, net.pu.y, 0)) return std::nullopt;
        touch(start, 0.0, -1);
        open.emplace(h(net.pu.x, net.pu.y), h(net.pu.x, net.pu.y), start);
        static constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        while (!open.empty()) {
            const auto [f, hh, cur] = open.top();
            open.pop();
            if (closed_[cur] == epoch_) continue;
            closed_[cur] = epoch_;
            if (cur == goal) return unwind(goal);
            const int z = static_cast<int>(cur / (static_cast<std::size_t>(S) * S));
            const int y = static_cast<int>((cur / S) % S);
            const int x = static_cast<int>(cur % S);
            const double gc = cost_[cur];
            auto relax = [&](int nx, int ny, int nz, double step) {
                if (!g_.passable(net.id, net.u, net.v, nx, ny, nz)) return;
                const std::size_t ni = g_.index(nx, ny, nz);
                if (closed_[ni] == epoch_) return;
                const double ng = gc + step;
                const double nh = h(nx, ny);
                if (ng + nh > cost_limit) return;
                if (stamp_[ni] == epoch_ && cost_[ni] <= ng) return;
                touch(ni, ng, static_cast<long>(cur));
                open.emplace(ng + nh, nh, ni);
            };
            for (const auto& d : dirs) {
                const int nx = x + d[0], ny = y + d[1];
                if (d[0] && d[1] && (g_.has_trace(nx, y, z) || g_.has_trace(x, ny, z))) continue;
                relax(nx, ny, z, (d[0] && d[1]) ? std::sqrt(2.0) : 1.0);
            }
            if (g_.layers() > 1) relax(x, y, 1 - z, penalty);
        }
        return std::nullopt;
    }

private:
    void touch(std::size_t i, double c, long parent) {
        stamp_[i] = epoch_;
        cost_[i] = c;
        parent_[i] = parent;
    }

    std::vector<Cell3> unwind(std::size_t goal) const {
        const int S = g_.size();
        std::vector<Cell3> path;
        for (long i = static_cast<long>(goal); i >= 0; i = parent_[static_cast<std::size_t>(i)]) {
            const auto u = static_cast<std::size_t>(i);
            path.push_back({static_cast<int>(u % S), static_cast<int>((u / S) % S),
                            static_cast<int>(u / (static_cast<std::size_t>(S) * S))});
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    const TierGrid& g_;
    std::vector<double> cost_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> closed_;
    std::vector<long> parent_;
    std::uint32_t epoch_ = 0;
};

struct RoutedLayout {
    Layout2D layout;
    std::vector<NodeKind> kinds;  // may be empty for plain graphs
    std::vector<RoutedEdge> edges;  // indexed by edge id
    int num_tiers = 1;
    RoutingConfig config;
    std::uint64_t seed = 0;
};

namespace detail {

inline double straight_length(const Layout2D& l, const Edge& e) {
    const auto a = l.pos[e.u], b = l.pos[e.v];
    return std::hypot(double(a.x - b.x), double(a.y - b.y));
}

inline void sort_by_length(std::vector<std::size_t>& ids, const Graph& graph, const Layout2D& l) {
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        const double la = straight_length(l, graph.edges[a]), lb = straight_length(l, graph.edges[b]);
        if (la != lb) return la < lb;
        return a < b;
    });
}

inline NetRequest request(const Graph& graph, const Layout2D& l, std::size_t id) {
    const auto& e = graph.edges[id];
    return {id, e.u, e.v, l.pos[e.u], l.pos[e.v]};
}

inline double min_edge_length(const Graph& graph, const Layout2D& l) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : graph.edges) m = std::min(m, straight_length(l, e));
    return m;
}

}  // namespace detail

struct TierResult {
    std::vector<RoutedEdge> routed;
    std::vector<std::size_t> leftover;
    bool congested = false;
};

// Qubit tier: single layer, straight segments only, every node zoned. Planar
// subgraph edges go first; all others follow. Both groups are tried in
// ascending length order.
inline TierResult route_qubit_tier(const Graph& graph, const Layout2D& layout, const PlanarSubgraph* mps,
                                   const RoutingConfig& cfg) {
    TierGrid grid(0, cfg.grid_size, 1);
    for (std::size_t v = 0; v < graph.num_nodes; ++v) grid.add_node(v, layout.pos[v], cfg.node_size);
    const double max_len = cfg.max_length_factor * detail::min_edge_length(graph, layout);

    std::vector<std::size_t> first, second;
    if (mps) {
        first = mps->kept;
        second = mps->rejected;
    } else {
        for (std::size_t i = 0; i < graph.edges.size(); ++i) first.push_back(i);
    }
    detail::sort_by_length(first, graph, layout);
    detail::sort_by_length(second, graph, layout);

    TierResult res;
    for (const auto* group : {&first, &second})
        for (std::size_t id : *group) {
            const auto net = detail::request(graph, layout, id);
            const double len = detail::straight_length(layout, graph.edges[id]);
            std::optional<std::vector<Cell3>> path;
            if (len <= max_len) path = straight_route(grid, net, 0);
            if (!path) {
                res.leftover.push_back(id);
                continue;
            }
            grid.commit(id, *path, cfg.edge_margin);
            res.routed.push_back({id, net.u, net.v, 0, std::move(*path), 0, 0, len, RouteMethod::straight});
        }
    return res;
}

// One higher tier: pops edges shortest first, tries a straight route and then
// A*; failures go to the back. Popping an edge twice means congestion.
inline TierResult route_tier(int tier, std::vector<std::size_t> fifo_ids, const Graph& graph, const Layout2D& layout,
                             const RoutingConfig& cfg, double max_length) {
    TierGrid grid(tier, cfg.grid_size, 2);
    {
        std::set<std::size_t> nodes;
        for (auto id : fifo_ids) {
            nodes.insert(graph.edges[id].u);
            nodes.insert(graph.edges[id].v);
        }
        for (auto v : nodes) grid.add_node(v, layout.pos[v], cfg.node_size);
    }
    detail::sort_by_length(fifo_ids, graph, layout);
    std::deque<std::size_t> fifo(fifo_ids.begin(), fifo_ids.end());
    std::set<std::size_t> attempted;
    AStarRouter astar(grid);
    TierResult res;
    const double cost_limit = max_length + cfg.bump_penalty * cfg.max_bumps + 1e-9;
    while (!fifo.empty()) {
        const std::size_t id = fifo.front();
        if (attempted.count(id)) {
            res.congested = true;
            break;
        }
        fifo.pop_front();
        attempted.insert(id);
        const auto net = detail::request(graph, layout, id);
        RouteMethod method = RouteMethod::straight;
        std::optional<std::vector<Cell3>> path;
        if (detail::straight_length(layout, graph.edges[id]) <= max_length + 1e-9)
            path = straight_route(grid, net, cfg.max_bumps);
        if (!path) {
            method = RouteMethod::astar;
            path = astar.route(net, cfg.bump_penalty, cost_limit);
            if (path && (count_bumps(*path) > cfg.max_bumps || path_length(*path) > max_length + 1e-9)) path.reset();
        }
        if (!path) {
            fifo.push_back(id);
            continue;
        }
        grid.commit(id, *path, cfg.edge_margin);
        RoutedEdge re{id, net.u, net.v, tier, std::move(*path), 0, 2 * tier, 0, method};
        re.bumps = count_bumps(re.path);
        re.length = method == RouteMethod::straight ? detail::straight_length(layout, graph.edges[id])
                                                     : path_length(re.path);
        res.routed.push_back(std::move(re));
    }
    res.leftover.assign(fifo.begin(), fifo.end());
    return res;
}

inline RoutedLayout route_all(const Graph& graph, const Layout2D& layout, const PlanarSubgraph* mps,
                              const RoutingConfig& cfg, std::uint64_t seed = 0) {
    if (graph.edges.empty()) fail(ErrorKind::parameter, "nothing to route: graph has no edges");
    RoutedLayout out;
    out.layout = layout;
    out.config = cfg;
    out.seed = seed;
    out.edges.resize(graph.edges.size());
    std::vector<char> done(graph.edges.size(), 0);
    auto take = [&](TierResult& r) {
        for (auto& e : r.routed) {
            done[e.id] = 1;
            out.edges[e.id] = std::move(e);
        }
    };
    auto t0 = route_qubit_tier(graph, layout, mps, cfg);
    take(t0);
    std::vector<std::size_t> fifo = std::move(t0.leftover);
    const double max_len = cfg.max_length_factor * detail::min_edge_length(graph, layout);
    int tier = 0;
    while (!fifo.empty()) {
        ++tier;
        std::sort(fifo.begin(), fifo.end());
        if (tier > cfg.max_tiers)
            throw RoutingError("tier limit " + std::to_string(cfg.max_tiers) + " reached with " +
                                   std::to_string(fifo.size()) + " edges unrouted",
                               fifo);
        if (cfg.max_tsvs && 2 * tier > *cfg.max_tsvs)
            throw RoutingError("TSV limit " + std::to_string(*cfg.max_tsvs) + " reached with " +
                                   std::to_string(fifo.size()) + " edges unrouted",
                               fifo);
        auto r = route_tier(tier, fifo, graph, layout, cfg, max_len);
        if (r.routed.empty()) {
            std::sort(r.leftover.begin(), r.leftover.end());
            throw RoutingError("tier " + std::to_string(tier) + " could not route any of " +
                                   std::to_string(r.leftover.size()) + " remaining edges",
                               r.leftover);
        }
        take(r);
        fifo = std::move(r.leftover);
    }
    out.num_tiers = tier + 1;
    return out;
}

}  // namespace qpr
