#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qpr/graph.hpp"

namespace qpr {

struct Point2 {
    double x = 0;
    double y = 0;
};

struct SpringOptions {
    double edge_length = 1.0;  // target distance per hop, in grid cells
    int max_sweeps = 500;
    double tolerance = 1e-4;   // per-node gradient norm
    double gutter = 2.0;       // gap between packed components
};

struct SpringStats {
    double initial_energy = 0;
    double final_energy = 0;
    int sweeps = 0;
};

namespace detail {

struct KKComponent {
    std::vector<std::size_t> nodes;
    std::vector<std::vector<double>> len;  // target lengths
    std::vector<std::vector<double>> k;    // spring constants
    std::vector<Point2> p;

    double node_energy(std::size_t m, Point2 at) const {
        double e = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i == m) continue;
            const double dx = at.x - p[i].x, dy = at.y - p[i].y;
            const double d = std::sqrt(dx * dx + dy * dy) - len[m][i];
            e += 0.5 * k[m][i] * d * d;
        }
        return e;
    }

    double energy() const {
        double e = 0;
        for (std::size_t i = 0; i < p.size(); ++i) e += node_energy(i, p[i]);
        return e / 2;
    }

    // Gradient and Hessian of the energy with respect to node m.
    void derivatives(std::size_t m, double& gx, double& gy, double& hxx, double& hxy, double& hyy) const {
        gx = gy = hxx = hxy = hyy = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i == m) continue;
            double dx = p[m].x - p[i].x, dy = p[m].y - p[i].y;
            double d2 = dx * dx + dy * dy;
            if (d2 < 1e-18) {
                dx = 1e-9;
                d2 = dx * dx;
            }
            const double d = std::sqrt(d2), d3 = d2 * d, kk = k[m][i], l = len[m][i];
            gx += kk * (dx - l * dx / d);
            gy += kk * (dy - l * dy / d);
            hxx += kk * (1 - l * dy * dy / d3);
            hyy += kk * (1 - l * dx * dx / d3);
            hxy += kk * l * dx * dy / d3;
        }
    }
};

inline void kk_optimize(KKComponent& c, const SpringOptions& opt, SpringStats& stats) {
    const std::size_t n = c.p.size();
    if (n < 2) return;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        double worst = 0;
        for (std::size_t m = 0; m < n; ++m) {
            double gx, gy, hxx, hxy, hyy;
            c.derivatives(m, gx, gy, hxx, hxy, hyy);
            const double gnorm = std::hypot(gx, gy);
            worst = std::max(worst, gnorm);
            if (gnorm < opt.tolerance) continue;
            const double det = hxx * hyy - hxy * hxy;
            double sx, sy;
            if (hxx > 0 && det > 1e-12) {
                sx = -(hyy * gx - hxy * gy) / det;
                sy = -(hxx * gy - hxy * gx) / det;
            } else {
                sx = -gx / std::max(hxx + hyy, 1.0);
                sy = -gy / std::max(hxx + hyy, 1.0);
            }
            const double e0 = c.node_energy(m, c.p[m]);
            double t = 1.0;
            for (int back = 0; back < 30; ++back, t *= 0.5) {
                const Point2 q{c.p[m].x + t * sx, c.p[m].y + t * sy};
                if (c.node_energy(m, q) < e0) {
                    c.p[m] = q;
                    break;
                }
            }
        }
        stats.sweeps = sweep + 1;
        if (worst < opt.tolerance) break;
    }
}

}  // namespace detail

// Kamada-Kawai layout. Each connected component starts on a circle in BFS
// order from its highest-degree node and is relaxed node by node with damped
// Newton steps, so the energy never increases. Components are packed left to
// right.
inline std::vector<Point2> kamada_kawai(const Graph& graph, const SpringOptions& opt = {},
                                        SpringStats* stats_out = nullptr) {
    const std::size_t n = graph.num_nodes;
    const auto adj = graph.adjacency();
    std::vector<Point2> out(n);
    SpringStats stats;
    double cursor = 0;
    for (const auto& comp : connected_components(n, adj)) {
        detail::KKComponent c;
        std::size_t root = comp[0];
        for (std::size_t v : comp)
            if (adj[v].size() > adj[root].size()) root = v;
        // BFS order fixes the circle order.
        std::vector<std::size_t> order;
        {
            std::vector<char> seen(n, 0);
            order.push_back(root);
            seen[root] = 1;
            for (std::size_t h = 0; h < order.size(); ++h) {
                auto nb = adj[order[h]];
                std::sort(nb.begin(), nb.end());
                for (std::size_t y : nb)
                    if (!seen[y]) {
                        seen[y] = 1;
                        order.push_back(y);
                    }
            }
        }
        c.nodes = order;
        const std::size_t m = order.size();
        c.len.assign(m, std::vector<double>(m, 0));
        c.k.assign(m, std::vector<double>(m, 0));
        for (std::size_t i = 0; i < m; ++i) {
            const auto d = bfs_distances(order[i], adj);
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                const double h = d[order[j]];
                c.len[i][j] = opt.edge_length * h;
                c.k[i][j] = 1.0 / (h * h);
            }
        }
        const double radius = opt.edge_length * static_cast<double>(std::max<std::size_t>(m, 2)) / (2 * std::numbers::pi);
        c.p.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
            c.p[i] = {m == 1 ? 0.0 : radius * std::cos(a), m == 1 ? 0.0 : radius * std::sin(a)};
        }
        SpringStats cs;
        const double e0 = c.energy();
        detail::kk_optimize(c, opt, cs);
        stats.initial_energy += e0;
        stats.final_energy += c.energy();
        stats.sweeps = std::max(stats.sweeps, cs.sweeps);

        double x0 = c.p[0].x, y0 = c.p[0].y, x1 = x0;
        for (const auto& p : c.p) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
        }
        for (std::size_t i = 0; i < m; ++i) out[order[i]] = {c.p[i].x - x0 + cursor, c.p[i].y - y0};
        cursor += (x1 - x0) + opt.gutter;
    }
    if (stats_out) *stats_out = stats;
    return out;
}

}  // namespace qpr
