#pragma once

#include <vector>

#include "qpr/css_code.hpp"

namespace qpr {

// Rotated surface code. Data qubit (i, j) sits at the centre of lattice
// square (i, j); plaquette (a, b) sits at lattice corner (a, b). Bulk
// plaquettes alternate X/Z by (a + b) parity; weight-2 boundary plaquettes
// are Z on the top/bottom rows and X on the left/right columns.
//
// Positions use the 45 degree rotated frame u = a + b, v = a - b (corners)
// so every coupler becomes a unit cardinal step.
inline CssCode build_surface_code(int d) {
    if (d < 3 || d % 2 == 0) fail(ErrorKind::parameter, "surface code distance must be odd and >= 3");
    const std::size_t n = static_cast<std::size_t>(d * d);
    auto data = [d](int i, int j) { return static_cast<std::size_t>(i * d + j); };

    std::vector<BinaryMatrix::Entry> ex, ez;
    std::vector<GridPoint> xpos, zpos;
    std::size_t rx = 0, rz = 0;
    for (int a = 0; a <= d; ++a) {
        for (int b = 0; b <= d; ++b) {
            const bool is_x = (a + b) % 2 == 0;
            const bool top_bottom = (a == 0 || a == d);
            const bool left_right = (b == 0 || b == d);
            if (top_bottom && left_right) continue;
            if (top_bottom && is_x) continue;
            if (left_right && !is_x) continue;
            std::vector<std::size_t> support;
            for (int i = a - 1; i <= a; ++i)
                for (int j = b - 1; j <= b; ++j)
                    if (i >= 0 && j >= 0 && i < d && j < d) support.push_back(data(i, j));
            const GridPoint p{a + b, a - b + d};
            if (is_x) {
                for (auto q : support) ex.emplace_back(rx, q);
                xpos.push_back(p);
                ++rx;
            } else {
                for (auto q : support) ez.emplace_back(rz, q);
                zpos.push_back(p);
                ++rz;
            }
        }
    }
    CssCode code = make_css_code(BinaryMatrix(rx, n, std::move(ex)), BinaryMatrix(rz, n, std::move(ez)), "surface", d);
    std::vector<GridPoint> pos;
    pos.reserve(code.num_nodes());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) pos.push_back({i + j + 1, i - j + d});
    pos.insert(pos.end(), xpos.begin(), xpos.end());
    pos.insert(pos.end(), zpos.begin(), zpos.end());
    code.positions = std::move(pos);
    return code;
}

}  // namespace qpr
