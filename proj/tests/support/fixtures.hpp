#pragma once

#include <limits>
#include <vector>

#include "qpr/rng.hpp"
#include "qpr/routing.hpp"

namespace fixtures {

// A random routing instance: up to 20x20 cells, one or two layers, a few
// committed obstacle traces and node zones, and one net between two free
// node cells.
struct RouteFixture {
    qpr::TierGrid grid{0, 1, 1};
    qpr::NetRequest net;
    double penalty = 0.01;
};

inline RouteFixture random_route_fixture(qpr::Rng& rng) {
    using qpr::uniform_below;
    RouteFixture f;
    const int size = 4 + static_cast<int>(uniform_below(rng, 17));
    const int layers = 1 + static_cast<int>(uniform_below(rng, 2));
    f.grid = qpr::TierGrid(1, size, layers);
    f.penalty = uniform_below(rng, 4) == 0 ? 0.5 * static_cast<double>(uniform_below(rng, 5)) : 0.01;
    auto rand_point = [&] {
        return qpr::GridPoint{static_cast<int>(uniform_below(rng, size)), static_cast<int>(uniform_below(rng, size))};
    };
    // Endpoints plus some third-party nodes whose zones block the net.
    const std::size_t extra = uniform_below(rng, 4);
    qpr::GridPoint pu = rand_point(), pv = rand_point();
    while (pv == pu) pv = rand_point();
    const int radius = static_cast<int>(uniform_below(rng, 2));
    f.grid.add_node(0, pu, radius);
    f.grid.add_node(1, pv, radius);
    for (std::size_t i = 0; i < extra; ++i) {
        const auto p = rand_point();
        if (std::max(std::abs(p.x - pu.x), std::abs(p.y - pu.y)) <= 2 * radius + 1 ||
            std::max(std::abs(p.x - pv.x), std::abs(p.y - pv.y)) <= 2 * radius + 1)
            continue;
        f.grid.add_node(2 + i, p, 0);
    }
    // Obstacle traces: random walks committed under other net ids.
    const std::size_t walls = uniform_below(rng, 6);
    for (std::size_t w = 0; w < walls; ++w) {
        std::vector<qpr::Cell3> path;
        qpr::Cell3 c{static_cast<int>(uniform_below(rng, size)), static_cast<int>(uniform_below(rng, size)),
                     static_cast<int>(uniform_below(rng, layers))};
        const std::size_t steps = 2 + uniform_below(rng, static_cast<std::uint64_t>(size));
        const bool horizontal = uniform_below(rng, 2) == 0;
        for (std::size_t s = 0; s < steps; ++s) {
            if (!f.grid.inside(c.x, c.y, c.z)) break;
            if (!(c.z == 0 && f.grid.in_zone(c.x, c.y))) path.push_back(c);
            if (horizontal)
                ++c.x;
            else
                ++c.y;
        }
        if (!path.empty()) f.grid.commit(100 + w, path, static_cast<int>(uniform_below(rng, 2)));
    }
    f.net = {7, 0, 1, pu, pv};
    return f;
}

inline double path_cost(const std::vector<qpr::Cell3>& path, double penalty) {
    return qpr::path_length(path) + penalty * qpr::count_bumps(path);
}

}  // namespace fixtures
