#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "qpr/routing.hpp"

namespace qpr {

namespace detail {

inline const char* node_colour(NodeKind k) {
    switch (k) {
        case NodeKind::data: return "#222222";
        case NodeKind::check_x: return "#d62728";
        case NodeKind::check_z: return "#1f77b4";
    }
    return "#888888";
}

inline void polyline(std::ostringstream& os, const std::vector<Cell3>& cells, std::size_t from, std::size_t to,
                     bool dashed) {
    if (to - from < 1) return;
    os << "<polyline points=\"";
    for (std::size_t i = from; i <= to; ++i) os << (i > from ? " " : "") << cells[i].x << ',' << cells[i].y;
    os << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"0.6\"";
    if (dashed) os << " stroke-dasharray=\"2,1.5\"";
    os << "/>\n";
}

}  // namespace detail

// One drawing per tier. Solid strokes run on z=0, dashed on z=1; squares mark
// bump bonds and diamonds mark TSV terminals of higher-tier edges.
inline std::vector<std::string> render_tiers(const RoutedLayout& rl) {
    std::vector<std::vector<const RoutedEdge*>> by_tier(static_cast<std::size_t>(std::max(rl.num_tiers, 1)));
    for (const auto& e : rl.edges) {
        if (e.tier < 0 || e.tier >= rl.num_tiers) fail(ErrorKind::parse, "edge tier outside layout tier count");
        by_tier[static_cast<std::size_t>(e.tier)].push_back(&e);
    }
    for (std::size_t t = 1; t < by_tier.size(); ++t)
        if (by_tier[t].empty()) fail(ErrorKind::routing, "tier " + std::to_string(t) + " has no routed edges");

    const int size = std::max(rl.layout.grid_size, 1);
    std::vector<std::string> out;
    for (std::size_t t = 0; t < by_tier.size(); ++t) {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-4 -12 " << size + 8 << ' ' << size + 16
           << "\" width=\"" << size + 8 << "\" height=\"" << size + 16 << "\">\n";
        os << "<rect x=\"-4\" y=\"-12\" width=\"" << size + 8 << "\" height=\"" << size + 16
           << "\" fill=\"#ffffff\"/>\n";
        os << "<text x=\"0\" y=\"-3\" font-family=\"sans-serif\" font-size=\"8\">tier " << t << "</text>\n";
        for (const auto* e : by_tier[t]) {
            const auto& p = e->path;
            std::size_t start = 0;
            for (std::size_t i = 1; i <= p.size(); ++i) {
                if (i == p.size() || p[i].z != p[start].z) {
                    detail::polyline(os, p, start, i - 1, p[start].z == 1);
                    start = i;
                }
            }
            for (std::size_t i = 1; i < p.size(); ++i)
                if (p[i].z != p[i - 1].z)
                    os << "<rect x=\"" << p[i].x - 1 << "\" y=\"" << p[i].y - 1
                       << "\" width=\"2\" height=\"2\" fill=\"#2ca02c\"/>\n";
            if (t >= 1 && !p.empty())
                for (const auto& c : {p.front(), p.back()})
                    os << "<path d=\"M" << c.x << ' ' << c.y - 2 << " L" << c.x + 2 << ' ' << c.y << " L" << c.x << ' '
                       << c.y + 2 << " L" << c.x - 2 << ' ' << c.y << " Z\" fill=\"none\" stroke=\"#9467bd\" "
                       << "stroke-width=\"0.6\"/>\n";
        }
        for (std::size_t v = 0; v < rl.layout.pos.size(); ++v) {
            const auto kind = v < rl.kinds.size() ? rl.kinds[v] : NodeKind::data;
            os << "<circle cx=\"" << rl.layout.pos[v].x << "\" cy=\"" << rl.layout.pos[v].y
               << "\" r=\"1.2\" fill=\"" << detail::node_colour(kind) << "\"/>\n";
        }
        os << "</svg>\n";
        out.push_back(os.str());
    }
    return out;
}

}  // namespace qpr
