#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpr/css_code.hpp"
#include "qpr/rng.hpp"

namespace qpr {

// Data qubits live on the edges of a width x height square lattice.
// In doubled coordinates a horizontal edge (i, j) is at (2i+1, 2j), a
// vertical edge at (2i, 2j+1), faces at odd/odd and vertices at even/even.
enum class EdgeKind { horizontal, vertical };

struct TileOffset {
    EdgeKind kind = EdgeKind::horizontal;
    int dx = 0;
    int dy = 0;
    auto operator<=>(const TileOffset&) const = default;
};

enum class CheckHeuristic { random, manhattan, euclidean, nearest_neighbor, manual };

inline const char* to_string(CheckHeuristic h) {
    switch (h) {
        case CheckHeuristic::random: return "random";
        case CheckHeuristic::manhattan: return "manhattan";
        case CheckHeuristic::euclidean: return "euclidean";
        case CheckHeuristic::nearest_neighbor: return "nearest_neighbor";
        case CheckHeuristic::manual: return "manual";
    }
    return "?";
}

inline CheckHeuristic parse_heuristic(const std::string& s) {
    for (auto h : {CheckHeuristic::random, CheckHeuristic::manhattan, CheckHeuristic::euclidean,
                   CheckHeuristic::nearest_neighbor, CheckHeuristic::manual})
        if (s == to_string(h)) return h;
    fail(ErrorKind::config, "unknown check heuristic '" + s + "'");
}

struct TileSpec {
    std::vector<TileOffset> x_tile;
    std::vector<TileOffset> z_tile;  // empty: point reflection of x_tile with edge kinds swapped
    int width = 0;
    int height = 0;
    CheckHeuristic heuristic = CheckHeuristic::euclidean;
    // Doubled-coordinate offsets from the anchor: X check on a face, Z check on a vertex.
    std::optional<std::pair<GridPoint, GridPoint>> manual_positions;
    std::uint64_t seed = 1;
    std::optional<int> declared_distance;
};

inline GridPoint doubled(EdgeKind kind, int i, int j) {
    return kind == EdgeKind::horizontal ? GridPoint{2 * i + 1, 2 * j} : GridPoint{2 * i, 2 * j + 1};
}

inline std::vector<TileOffset> default_z_tile(const std::vector<TileOffset>& x_tile) {
    std::vector<TileOffset> z;
    for (const auto& o : x_tile)
        z.push_back({o.kind == EdgeKind::horizontal ? EdgeKind::vertical : EdgeKind::horizontal, -o.dx, -o.dy});
    return z;
}

// Chooses a check-qubit site near the given qubit sites. Candidates are faces
// (on_face) or vertices within the support's bounding box grown by one; ties
// go to the lexicographically smallest (x, then y) site. Sites in `taken`
// are skipped.
inline GridPoint place_check_qubit(const std::vector<GridPoint>& support, bool on_face, CheckHeuristic h,
                                   Rng& rng, const std::vector<GridPoint>& taken = {}) {
    if (support.empty()) fail(ErrorKind::parameter, "check with empty support");
    if (h == CheckHeuristic::manual) fail(ErrorKind::parameter, "manual placement needs explicit positions");
    int x0 = support[0].x, x1 = x0, y0 = support[0].y, y1 = y0;
    for (const auto& p : support) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const int parity = on_face ? 1 : 0;
    std::vector<GridPoint> cand;
    for (int x = x0 - 1; x <= x1 + 1; ++x)
        for (int y = y0 - 1; y <= y1 + 1; ++y)
            if (((x % 2) + 2) % 2 == parity && ((y % 2) + 2) % 2 == parity &&
                std::find(taken.begin(), taken.end(), GridPoint{x, y}) == taken.end())
                cand.push_back({x, y});
    if (cand.empty()) fail(ErrorKind::capacity, "no free candidate position for check qubit");
    if (h == CheckHeuristic::random) return cand[uniform_below(rng, cand.size())];

    auto score = [&](const GridPoint& c) {
        double s = 0;
        for (const auto& p : support) {
            const double dx = p.x - c.x, dy = p.y - c.y;
            switch (h) {
                case CheckHeuristic::manhattan: s += std::abs(dx) + std::abs(dy); break;
                case CheckHeuristic::euclidean: s += std::sqrt(dx * dx + dy * dy); break;
                default: s -= (std::abs(dx) + std::abs(dy) == 1.0) ? 1.0 : 0.0; break;
            }
        }
        return s;
    };
    GridPoint best = cand[0];
    double best_score = score(best);
    for (std::size_t i = 1; i < cand.size(); ++i) {
        const double s = score(cand[i]);
        if (s < best_score - 1e-12) {
            best = cand[i];
            best_score = s;
        }
    }
    return best;
}

namespace detail {

inline bool bulk_tiles_commute(const std::vector<TileOffset>& x, const std::vector<TileOffset>& z) {
    std::map<std::pair<int, int>, int> overlap;
    for (const auto& a : x)
        for (const auto& b : z)
            if (a.kind == b.kind) ++overlap[{a.dx - b.dx, a.dy - b.dy}];
    for (const auto& [shift, count] : overlap)
        if (count % 2) return false;
    return true;
}

}  // namespace detail

// Translates the X and Z tiles over the lattice. X anchors whose tile spills
// out in y are dropped and the rest truncated in x; Z anchors are treated the
// other way round. Every X/Z overlap then lies inside the lattice, so
// truncated checks still commute. Unchecked data qubits and empty checks are
// removed afterwards.
inline CssCode build_tile_code(const TileSpec& spec) {
    if (spec.width < 1 || spec.height < 1) fail(ErrorKind::parameter, "tile lattice must be at least 1x1");
    if (spec.x_tile.empty()) fail(ErrorKind::parameter, "tile code needs a nonempty x tile");
    if (spec.heuristic == CheckHeuristic::manual && !spec.manual_positions)
        fail(ErrorKind::parameter, "manual heuristic requires manual_positions");
    const auto xt = spec.x_tile;
    const auto zt = spec.z_tile.empty() ? default_z_tile(spec.x_tile) : spec.z_tile;
    for (const auto* t : {&xt, &zt}) {
        auto sorted = *t;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(ErrorKind::parameter, "duplicate offset in tile");
    }
    if (!detail::bulk_tiles_commute(xt, zt)) fail(ErrorKind::commutation, "x and z tiles do not commute in the bulk");

    const int W = spec.width, H = spec.height;
    auto qubit = [W, H](EdgeKind k, int i, int j) {
        return static_cast<std::size_t>((k == EdgeKind::horizontal ? 0 : W * H) + j * W + i);
    };
    int mindx = 0, maxdx = 0, mindy = 0, maxdy = 0;
    for (const auto* t : {&xt, &zt})
        for (const auto& o : *t) {
            mindx = std::min(mindx, o.dx);
            maxdx = std::max(maxdx, o.dx);
            mindy = std::min(mindy, o.dy);
            maxdy = std::max(maxdy, o.dy);
        }

    struct Check {
        GridPoint anchor;
        std::vector<std::size_t> support;
    };
    auto collect = [&](const std::vector<TileOffset>& tile, bool strict_y) {
        std::vector<Check> out;
        for (int ay = -maxdy; ay < H - mindy; ++ay)
            for (int ax = -maxdx; ax < W - mindx; ++ax) {
                bool inside = true;
                for (const auto& o : tile) {
                    const int c = strict_y ? ay + o.dy : ax + o.dx;
                    const int lim = strict_y ? H : W;
                    if (c < 0 || c >= lim) inside = false;
                }
                if (!inside) continue;
                Check ch{{ax, ay}, {}};
                for (const auto& o : tile) {
                    const int i = ax + o.dx, j = ay + o.dy;
                    if (i >= 0 && i < W && j >= 0 && j < H) ch.support.push_back(qubit(o.kind, i, j));
                }
                if (ch.support.empty()) continue;
                std::sort(ch.support.begin(), ch.support.end());
                out.push_back(std::move(ch));
            }
        return out;
    };
    const auto xchecks = collect(xt, true);
    const auto zchecks = collect(zt, false);

    const std::size_t total = static_cast<std::size_t>(2 * W * H);
    std::vector<long> remap(total, -1);
    for (const auto* cs : {&xchecks, &zchecks})
        for (const auto& c : *cs)
            for (auto q : c.support) remap[q] = 0;
    std::size_t n = 0;
    std::vector<GridPoint> pos;
    for (std::size_t q = 0; q < total; ++q) {
        if (remap[q] < 0) continue;
        remap[q] = static_cast<long>(n++);
        const int local = static_cast<int>(q % static_cast<std::size_t>(W * H));
        const EdgeKind k = q < static_cast<std::size_t>(W * H) ? EdgeKind::horizontal : EdgeKind::vertical;
        pos.push_back(doubled(k, local % W, local / W));
    }
    auto matrix = [&](const std::vector<Check>& cs) {
        std::vector<BinaryMatrix::Entry> e;
        for (std::size_t r = 0; r < cs.size(); ++r)
            for (auto q : cs[r].support) e.emplace_back(r, static_cast<std::size_t>(remap[q]));
        return BinaryMatrix(cs.size(), n, std::move(e));
    };
    CssCode code = make_css_code(matrix(xchecks), matrix(zchecks), "tile", spec.declared_distance);

    // One site offset per basis, chosen on the untruncated tile so the
    // pattern repeats across the lattice.
    GridPoint fx, fz;
    if (spec.heuristic == CheckHeuristic::manual) {
        std::tie(fx, fz) = *spec.manual_positions;
        auto odd = [](int v) { return ((v % 2) + 2) % 2 == 1; };
        if (!(odd(fx.x) && odd(fx.y)) || odd(fz.x) || odd(fz.y))
            fail(ErrorKind::parameter, "manual positions must be a face (x check) and a vertex (z check)");
    } else {
        Rng rng(spec.seed);
        auto shape = [](const std::vector<TileOffset>& t) {
            std::vector<GridPoint> s;
            for (const auto& o : t) s.push_back(doubled(o.kind, o.dx, o.dy));
            return s;
        };
        fx = place_check_qubit(shape(xt), true, spec.heuristic, rng);
        fz = place_check_qubit(shape(zt), false, spec.heuristic, rng);
    }
    for (const auto& c : xchecks) pos.push_back({2 * c.anchor.x + fx.x, 2 * c.anchor.y + fx.y});
    for (const auto& c : zchecks) pos.push_back({2 * c.anchor.x + fz.x, 2 * c.anchor.y + fz.y});
    if (!pos.empty()) {
        int mx = pos[0].x, my = pos[0].y;
        for (const auto& p : pos) {
            mx = std::min(mx, p.x);
            my = std::min(my, p.y);
        }
        // Even shifts keep faces and vertices on their parity classes.
        mx -= ((mx % 2) + 2) % 2;
        my -= ((my % 2) + 2) % 2;
        for (auto& p : pos) {
            p.x -= mx;
            p.y -= my;
        }
    }
    code.positions = std::move(pos);
    return code;
}

}  // namespace qpr
