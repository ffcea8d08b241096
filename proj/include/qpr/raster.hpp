#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "qpr/css_code.hpp"
#include "qpr/kamada_kawai.hpp"

namespace qpr {

struct Layout2D {
    std::vector<GridPoint> pos;
    int grid_size = 0;
};

// Inclusive cell bounds for rasterisation.
struct CellBox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    long long cells() const { return static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1); }
    bool contains(GridPoint p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

namespace detail {

inline double cell_distance(Point2 p, GridPoint c) {
    return std::hypot(p.x - (c.x + 0.5), p.y - (c.y + 0.5));
}

// Nearest free cell to p by Euclidean distance to cell centres, scanning
// Chebyshev shells around floor(p). A cell in shell r is at least
// r - (Chebyshev offset of p from the shell centre) away, which bounds the scan.
inline std::optional<GridPoint> nearest_free(Point2 p, const std::set<GridPoint>& taken,
                                             const std::optional<CellBox>& box) {
    GridPoint c{static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
    if (box) {
        c.x = std::clamp(c.x, box->x0, box->x1);
        c.y = std::clamp(c.y, box->y0, box->y1);
    }
    std::optional<GridPoint> best;
    double best_d = 0;
    const double off = std::max(std::abs(p.x - (c.x + 0.5)), std::abs(p.y - (c.y + 0.5)));
    const int limit = box ? std::max(box->x1 - box->x0, box->y1 - box->y0) + 1 : 1 << 20;
    auto visit = [&](int dx, int dy) {
        const GridPoint q{c.x + dx, c.y + dy};
        if ((box && !box->contains(q)) || taken.count(q)) return;
        const double d = cell_distance(p, q);
        if (!best || d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && q < *best)) {
            best = q;
            best_d = d;
        }
    };
    for (int r = 0; r <= limit; ++r) {
        if (best && r - off > best_d) break;
        if (r == 0) {
            visit(0, 0);
            continue;
        }
        for (int d = -r; d <= r; ++d) {
            visit(d, -r);
            visit(d, r);
        }
        for (int d = -r + 1; d <= r - 1; ++d) {
            visit(-r, d);
            visit(r, d);
        }
    }
    return best;
}

}  // namespace detail

// Phase 1 floors every position and keeps nodes whose cell no other node
// wants. Phase 2 repeatedly places the conflicted node that is closest to a
// free cell; keys are refreshed lazily when the cell they point at is taken.
inline std::vector<GridPoint> rasterize(const std::vector<Point2>& coords, const std::optional<CellBox>& box = {}) {
    const std::size_t n = coords.size();
    for (const auto& p : coords)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorKind::parameter, "non-finite coordinate");
    if (box && static_cast<long long>(n) > box->cells())
        fail(ErrorKind::capacity, "grid too small: " + std::to_string(n) + " nodes, " + std::to_string(box->cells()) +
                                      " cells");
    std::vector<GridPoint> out(n);
    std::map<GridPoint, std::vector<std::size_t>> wants;
    for (std::size_t v = 0; v < n; ++v) {
        GridPoint c{static_cast<int>(std::floor(coords[v].x)), static_cast<int>(std::floor(coords[v].y))};
        if (box && !box->contains(c)) c = {std::clamp(c.x, box->x0, box->x1), std::clamp(c.y, box->y0, box->y1)};
        wants[c].push_back(v);
    }
    std::set<GridPoint> taken;
    std::vector<std::size_t> conflicted;
    for (const auto& [cell, vs] : wants) {
        if (vs.size() == 1) {
            out[vs[0]] = cell;
            taken.insert(cell);
        } else {
            conflicted.insert(conflicted.end(), vs.begin(), vs.end());
        }
    }
    std::sort(conflicted.begin(), conflicted.end());

    using Key = std::tuple<double, std::size_t, GridPoint>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
    for (std::size_t v : conflicted) {
        const auto c = detail::nearest_free(coords[v], taken, box);
        if (!c) fail(ErrorKind::capacity, "no free cell left");
        heap.emplace(detail::cell_distance(coords[v], *c), v, *c);
    }
    while (!heap.empty()) {
        auto [d, v, cell] = heap.top();
        heap.pop();
        if (taken.count(cell)) {
            const auto c = detail::nearest_free(coords[v], taken, box);
            if (!c) fail(ErrorKind::capacity, "no free cell left");
            heap.emplace(detail::cell_distance(coords[v], *c), v, *c);
            continue;
        }
        out[v] = cell;
        taken.insert(cell);
    }
    return out;
}

// Maps the distinct x values to 0..k-1 in order, and likewise for y.
inline std::vector<GridPoint> compact(const std::vector<GridPoint>& pos) {
    std::vector<int> xs, ys;
    for (const auto& p : pos) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    auto uniq = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(xs);
    uniq(ys);
    std::vector<GridPoint> out;
    out.reserve(pos.size());
    for (const auto& p : pos)
        out.push_back({static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin()),
                       static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin())});
    return out;
}

// Translates to the origin and scales by floor((grid_size - 1) / extent).
inline Layout2D normalize(const std::vector<GridPoint>& pos, int grid_size) {
    Layout2D out;
    out.grid_size = grid_size;
    if (pos.empty()) return out;
    int x0 = pos[0].x, y0 = pos[0].y, x1 = x0, y1 = y0;
    for (const auto& p : pos) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    const int extent = std::max(x1 - x0, y1 - y0);
    if (grid_size < extent + 1)
        fail(ErrorKind::capacity, "grid size " + std::to_string(grid_size) + " below layout extent " +
                                      std::to_string(extent + 1));
    const int scale = extent == 0 ? 1 : (grid_size - 1) / extent;
    for (const auto& p : pos) out.pos.push_back({(p.x - x0) * scale, (p.y - y0) * scale});
    return out;
}

}  // namespace qpr
