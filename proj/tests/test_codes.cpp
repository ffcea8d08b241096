#include <gtest/gtest.h>

#include "qpr/bb_code.hpp"
#include "qpr/io.hpp"
#include "qpr/radial_code.hpp"
#include "qpr/surface_code.hpp"
#include "qpr/tile_code.hpp"
#include "support/oracles.hpp"

using namespace qpr;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::parameter;
}

BinaryMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double density) {
    std::vector<BinaryMatrix::Entry> e;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (uniform_unit(rng) < density) e.emplace_back(r, c);
    return BinaryMatrix(rows, cols, e);
}

// CSS invariants checked against the naive oracle.
void expect_css_invariants(const CssCode& c) {
    const auto dx = oracle::dense(c.hx), dz = oracle::dense(c.hz);
    ASSERT_EQ(c.hx.cols(), c.n);
    ASSERT_EQ(c.hz.cols(), c.n);
    for (const auto& row : oracle::naive_product_transpose(dx, dz))
        for (int v : row) ASSERT_EQ(v, 0);
    EXPECT_EQ(c.k, c.n - oracle::naive_rank(dx) - oracle::naive_rank(dz));
}

void expect_bipartite_graph(const CssCode& c, const ConnectivityGraph& g) {
    ASSERT_EQ(g.num_nodes, c.n + c.hx.rows() + c.hz.rows());
    ASSERT_EQ(g.edges.size(), c.hx.popcount() + c.hz.popcount());
    // Two-colouring by BFS.
    std::vector<int> colour(g.num_nodes, -1);
    const auto adj = g.adjacency();
    for (std::size_t s = 0; s < g.num_nodes; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::vector<std::size_t> q{s};
        while (!q.empty()) {
            const auto u = q.back();
            q.pop_back();
            for (auto w : adj[u]) {
                if (colour[w] < 0) {
                    colour[w] = 1 - colour[u];
                    q.push_back(w);
                }
                ASSERT_NE(colour[w], colour[u]);
            }
        }
    }
    for (const auto& e : g.edges) {
        const bool du = g.kinds[e.u] == NodeKind::data, dv = g.kinds[e.v] == NodeKind::data;
        ASSERT_NE(du, dv);
    }
    for (std::size_t r = 0; r < c.hx.rows(); ++r) EXPECT_EQ(g.degree(c.x_node(r)), c.hx.row(r).size());
    for (std::size_t r = 0; r < c.hz.rows(); ++r) EXPECT_EQ(g.degree(c.z_node(r)), c.hz.row(r).size());
}

TileSpec weight6_tile(int size) {
    TileSpec t;
    t.x_tile = {{EdgeKind::horizontal, 0, 1}, {EdgeKind::horizontal, 0, 2}, {EdgeKind::horizontal, 2, 0},
                {EdgeKind::vertical, 0, 0},   {EdgeKind::vertical, 1, 0},   {EdgeKind::vertical, 2, 2}};
    t.width = t.height = size;
    return t;
}

}  // namespace

TEST(BinaryMatrix, RejectsOutOfBoundsAndDuplicates) {
    EXPECT_EQ(kind_of([] { BinaryMatrix(2, 2, {{0, 2}}); }), ErrorKind::dimension);
    EXPECT_EQ(kind_of([] { BinaryMatrix(2, 2, {{0, 1}, {0, 1}}); }), ErrorKind::parse);
}

TEST(BinaryMatrix, RankMatchesNaiveEliminationOnRandomMatrices) {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        const auto rows = 1 + uniform_below(rng, 20), cols = 1 + uniform_below(rng, 20);
        const auto m = random_matrix(rng, rows, cols, uniform_unit(rng));
        ASSERT_EQ(rank(m), oracle::naive_rank(oracle::dense(m)));
    }
}

TEST(BinaryMatrix, KernelBasisSpansTheNullSpace) {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const auto m = random_matrix(rng, 1 + uniform_below(rng, 12), 1 + uniform_below(rng, 16), 0.3);
        const auto ker = kernel_basis(m);
        EXPECT_EQ(ker.size(), m.cols() - oracle::naive_rank(oracle::dense(m)));
        for (const auto& v : ker)
            for (const auto& row : m.dense_rows()) ASSERT_FALSE(row.dot(v));
        EXPECT_EQ(rank(ker, m.cols()), ker.size());
    }
}

TEST(ConnectivityGraph, SurfaceD3HasSeventeenNodesAndTwentyFourEdges) {
    const auto c = build_surface_code(3);
    const auto g = connectivity_graph(c);
    EXPECT_EQ(g.num_nodes, 17u);
    EXPECT_EQ(g.edges.size(), 24u);
    expect_bipartite_graph(c, g);
}

TEST(ConnectivityGraph, DegenerateSingleQubitCode) {
    const auto c = make_css_code(BinaryMatrix(0, 1), BinaryMatrix(0, 1));
    const auto g = connectivity_graph(c);
    EXPECT_EQ(g.num_nodes, 1u);
    EXPECT_TRUE(g.edges.empty());
    EXPECT_EQ(c.k, 1u);
}

TEST(ConnectivityGraph, RejectsNonCommutingMatrices) {
    EXPECT_EQ(kind_of([] { make_css_code(BinaryMatrix(1, 2, {{0, 0}}), BinaryMatrix(1, 2, {{0, 0}})); }),
              ErrorKind::commutation);
    CssCode bad;
    bad.hx = BinaryMatrix(1, 2, {{0, 0}});
    bad.hz = BinaryMatrix(1, 2, {{0, 0}});
    bad.n = 2;
    EXPECT_EQ(kind_of([&] { connectivity_graph(bad); }), ErrorKind::commutation);
}

TEST(SurfaceCode, Parameters) {
    for (int d : {3, 5, 7, 9}) {
        const auto c = build_surface_code(d);
        EXPECT_EQ(c.n, static_cast<std::size_t>(d * d));
        EXPECT_EQ(c.k, 1u);
        expect_css_invariants(c);
        ASSERT_TRUE(c.positions);
        // Every coupler is a unit cardinal step in the generated positions.
        const auto g = connectivity_graph(c);
        for (const auto& e : g.edges) {
            const auto a = (*c.positions)[e.u], b = (*c.positions)[e.v];
            EXPECT_EQ(std::abs(a.x - b.x) + std::abs(a.y - b.y), 1);
        }
    }
}

TEST(SurfaceCode, RejectsEvenOrSmallDistance) {
    EXPECT_EQ(kind_of([] { build_surface_code(4); }), ErrorKind::parameter);
    EXPECT_EQ(kind_of([] { build_surface_code(1); }), ErrorKind::parameter);
}

TEST(BBCode, GrossConfigFromBundledFile) {
    const auto spec = bb_spec_from_json(read_json(std::string(QPR_DATA_DIR) + "/codes/gross.json"));
    ToricLayoutInfo info;
    const auto c = build_bb_code(spec, &info);
    EXPECT_EQ(c.n, 144u);
    EXPECT_EQ(c.k, 12u);
    expect_css_invariants(c);
    expect_bipartite_graph(c, connectivity_graph(c));
    for (std::size_t r = 0; r < c.hx.rows(); ++r) EXPECT_EQ(c.hx.row(r).size(), 6u);
    ASSERT_TRUE(c.positions);
    EXPECT_LE(info.width, info.height);
    EXPECT_DOUBLE_EQ(info.aspect_ratio(), static_cast<double>(info.height) / info.width);
}

TEST(BBCode, TwoGrossConfigFromBundledFile) {
    const auto spec = bb_spec_from_json(read_json(std::string(QPR_DATA_DIR) + "/codes/two_gross.json"));
    const auto c = build_bb_code(spec);
    EXPECT_EQ(c.n, 288u);
    EXPECT_EQ(c.k, 12u);
    expect_css_invariants(c);
}

TEST(BBCode, IdentityMonomialsGiveNoLogicalQubits) {
    BBSpec s{1, 1, {{0, 0}}, {{0, 0}}, 0, std::nullopt};
    const auto c = build_bb_code(s);
    EXPECT_EQ(c.k, 0u);
}

TEST(BBCode, DuplicateMonomialRejected) {
    BBSpec s{4, 4, {{1, 0}, {1, 0}}, {{0, 1}}, 0, std::nullopt};
    EXPECT_EQ(kind_of([&] { build_bb_code(s); }), ErrorKind::parameter);
}

TEST(BBCode, RandomConfigsCommute) {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        BBSpec s;
        s.l = 2 + static_cast<int>(uniform_below(rng, 7));
        s.m = 2 + static_cast<int>(uniform_below(rng, 7));
        s.shift = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(s.m)));
        for (auto* list : {&s.a, &s.b}) {
            std::set<Monomial> seen;
            while (seen.size() < 3) seen.insert({static_cast<int>(uniform_below(rng, s.l)), static_cast<int>(uniform_below(rng, s.m))});
            list->assign(seen.begin(), seen.end());
        }
        try {
            const auto c = build_bb_code(s);
            expect_css_invariants(c);
            if (c.positions) {
                // Positions, when produced, are injective.
                std::set<GridPoint> uniq(c.positions->begin(), c.positions->end());
                EXPECT_EQ(uniq.size(), c.positions->size());
            }
        } catch (const Error& e) {
            // Distinct monomials may coincide under a twist; nothing else may fail.
            EXPECT_EQ(e.kind(), ErrorKind::parameter);
        }
    }
}

TEST(BBCode, SquareGridPositionsPutFourCouplersPerCheckOnUnitSteps) {
    const auto spec = bb_spec_from_json(read_json(std::string(QPR_DATA_DIR) + "/codes/gross.json"));
    const auto c = build_bb_code(spec);
    const auto g = connectivity_graph(c);
    ASSERT_TRUE(c.positions);
    auto torus_unit = [&](GridPoint a, GridPoint b, int w, int h) {
        const int dx = std::min(std::abs(a.x - b.x), w - std::abs(a.x - b.x));
        const int dy = std::min(std::abs(a.y - b.y), h - std::abs(a.y - b.y));
        return dx + dy == 1;
    };
    int w = 0, h = 0;
    for (const auto& p : *c.positions) {
        w = std::max(w, p.x + 1);
        h = std::max(h, p.y + 1);
    }
    EXPECT_EQ(w * h, static_cast<int>(g.num_nodes));
    std::size_t unit = 0;
    for (const auto& e : g.edges) unit += torus_unit((*c.positions)[e.u], (*c.positions)[e.v], w, h);
    EXPECT_EQ(unit, 576u);  // two thirds of 864, counted on the torus
}

TEST(RadialCode, ParametersOverFamilyGrid) {
    for (int r : {2, 3, 4})
        for (int s : {2, 3, 5, 7}) {
            RadialSpec spec;
            spec.r = r;
            spec.s = s;
            const auto c = build_radial_code(spec);
            ASSERT_EQ(c.n, static_cast<std::size_t>(2 * r * r * s)) << r << "," << s;
            ASSERT_EQ(c.k, static_cast<std::size_t>(2 * (r - 1) * (r - 1))) << r << "," << s;
            expect_css_invariants(c);
            const auto g = connectivity_graph(c);
            for (std::size_t v = 0; v < c.n; ++v) ASSERT_EQ(g.degree(v), static_cast<std::size_t>(2 * r));
            for (std::size_t i = 0; i < c.hx.rows(); ++i) ASSERT_EQ(c.hx.row(i).size(), static_cast<std::size_t>(2 * r));
            for (std::size_t i = 0; i < c.hz.rows(); ++i) ASSERT_EQ(c.hz.row(i).size(), static_cast<std::size_t>(2 * r));
        }
}

TEST(RadialCode, SixteenQubitInstanceHasThirtyTwoNodes) {
    RadialSpec spec;
    const auto c = build_radial_code(spec);
    const auto g = connectivity_graph(c);
    EXPECT_EQ(g.num_nodes, 32u);
    EXPECT_EQ(c.hx.rows() + c.hz.rows(), 16u);
    for (std::size_t v = 0; v < 16; ++v) EXPECT_EQ(g.degree(v), 4u);
}

TEST(RadialCode, RejectsBadSpec) {
    RadialSpec spec;
    spec.r = 1;
    EXPECT_EQ(kind_of([&] { build_radial_code(spec); }), ErrorKind::parameter);
}

TEST(TileCode, Weight6TileTruncationAndPruning) {
    const auto c = build_tile_code(weight6_tile(10));
    expect_css_invariants(c);
    EXPECT_EQ(c.n, 200u);
    EXPECT_EQ(c.k, 8u);
    const auto g = connectivity_graph(c);
    expect_bipartite_graph(c, g);
    for (std::size_t v = 0; v < c.n; ++v) EXPECT_GT(g.degree(v), 0u);
    for (std::size_t r = 0; r < c.hx.rows(); ++r) EXPECT_GT(c.hx.row(r).size(), 0u);
    for (std::size_t r = 0; r < c.hz.rows(); ++r) EXPECT_GT(c.hz.row(r).size(), 0u);
    ASSERT_TRUE(c.positions);
    std::set<GridPoint> uniq(c.positions->begin(), c.positions->end());
    EXPECT_EQ(uniq.size(), c.positions->size());
}

TEST(TileCode, FullTruncationGivesTrivialCode) {
    auto spec = weight6_tile(1);
    const auto c = build_tile_code(spec);
    EXPECT_EQ(c.hx.rows() + c.hz.rows(), 0u);
    EXPECT_EQ(c.n, 0u);
    EXPECT_EQ(c.k, 0u);
}

TEST(TileCode, HeuristicChangesPositionsOnly) {
    auto spec = weight6_tile(8);
    const auto a = build_tile_code(spec);
    spec.heuristic = CheckHeuristic::random;
    spec.seed = 5;
    const auto b = build_tile_code(spec);
    EXPECT_EQ(a.hx, b.hx);
    EXPECT_EQ(a.hz, b.hz);
    ASSERT_TRUE(a.positions && b.positions);
    EXPECT_NE(*a.positions, *b.positions);
    // Data qubit sites are fixed by the lattice up to the translation to the origin.
    const auto a0 = (*a.positions)[0], b0 = (*b.positions)[0];
    for (std::size_t v = 0; v < a.n; ++v) {
        EXPECT_EQ((*a.positions)[v].x - a0.x, (*b.positions)[v].x - b0.x);
        EXPECT_EQ((*a.positions)[v].y - a0.y, (*b.positions)[v].y - b0.y);
    }
}

TEST(TileCode, ManualWithoutPositionsIsAnError) {
    auto spec = weight6_tile(6);
    spec.heuristic = CheckHeuristic::manual;
    EXPECT_EQ(kind_of([&] { build_tile_code(spec); }), ErrorKind::parameter);
    spec.manual_positions = std::make_pair(GridPoint{1, 1}, GridPoint{0, 0});
    EXPECT_NO_THROW(build_tile_code(spec));
}

TEST(TileCode, UnknownHeuristicNameRejected) {
    EXPECT_THROW(parse_heuristic("closest"), Error);
    for (auto h : {"random", "manhattan", "euclidean", "nearest_neighbor", "manual"})
        EXPECT_EQ(to_string(parse_heuristic(h)), std::string(h));
}

TEST(CheckPlacement, EuclideanPicksTheCentreFaceOfASymmetricPlaquette) {
    Rng rng(1);
    // Four edges of the unit square around face (1, 1) in doubled coordinates.
    const std::vector<GridPoint> support{{1, 0}, {0, 1}, {2, 1}, {1, 2}};
    EXPECT_EQ(place_check_qubit(support, true, CheckHeuristic::euclidean, rng), (GridPoint{1, 1}));
    EXPECT_EQ(place_check_qubit(support, true, CheckHeuristic::manhattan, rng), (GridPoint{1, 1}));
}

TEST(CheckPlacement, NearestNeighbourClaimsFourUnitEdgesOnWeight4Tile) {
    Rng rng(1);
    const std::vector<GridPoint> support{{1, 0}, {0, 1}, {2, 1}, {1, 2}};
    const auto p = place_check_qubit(support, true, CheckHeuristic::nearest_neighbor, rng);
    // Oracle: enumerate all face candidates and count unit-distance neighbours.
    int best = 0;
    for (int x = -1; x <= 3; x += 2)
        for (int y = -1; y <= 3; y += 2) {
            int cnt = 0;
            for (const auto& s : support) cnt += std::abs(s.x - x) + std::abs(s.y - y) == 1;
            best = std::max(best, cnt);
        }
    int got = 0;
    for (const auto& s : support) got += std::abs(s.x - p.x) + std::abs(s.y - p.y) == 1;
    EXPECT_EQ(best, 4);
    EXPECT_EQ(got, 4);
}

TEST(CheckPlacement, TiesBreakLexicographically) {
    Rng rng(1);
    // Two data sites on a line: faces (1,1) and (1,-1) tie; smaller y wins after x.
    const std::vector<GridPoint> support{{0, 0}, {2, 0}};
    EXPECT_EQ(place_check_qubit(support, true, CheckHeuristic::euclidean, rng), (GridPoint{1, -1}));
}

TEST(CheckPlacement, TakenSitesAreSkippedAndExhaustionFails) {
    Rng rng(1);
    const std::vector<GridPoint> support{{1, 0}, {0, 1}, {2, 1}, {1, 2}};
    const auto p = place_check_qubit(support, true, CheckHeuristic::euclidean, rng, {{1, 1}});
    EXPECT_NE(p, (GridPoint{1, 1}));
    std::vector<GridPoint> all;
    for (int x = -1; x <= 3; x += 2)
        for (int y = -1; y <= 3; y += 2) all.push_back({x, y});
    EXPECT_EQ(kind_of([&] { place_check_qubit(support, true, CheckHeuristic::euclidean, rng, all); }),
              ErrorKind::capacity);
}

TEST(LoadCode, RepetitionCheckWithAbsentHz) {
    const json j = json::parse(R"({"schema":"qpr.css_code","version":1,"n":2,"rows_x":1,"hx":[[0,0],[0,1]]})");
    const auto c = code_from_json(j);
    EXPECT_EQ(c.n, 2u);
    EXPECT_EQ(c.k, 1u);
    EXPECT_EQ(c.hz.rows(), 0u);
}

TEST(LoadCode, ErrorsAreReportedDistinctly) {
    EXPECT_EQ(kind_of([] { load_code("/nonexistent/code.json"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { code_from_json(json::parse(R"({"schema":"qpr.css_code","version":1})")); }),
              ErrorKind::parse);
    EXPECT_EQ(kind_of([] {
                  code_from_json(json::parse(R"({"schema":"qpr.css_code","version":1,"n":2,"rows_x":1,"hx":[[0,5]]})"));
              }),
              ErrorKind::dimension);
    EXPECT_EQ(kind_of([] {
                  code_from_json(json::parse(
                      R"({"schema":"qpr.css_code","version":1,"n":2,"rows_x":1,"rows_z":1,"hx":[[0,0]],"hz":[[0,0]]})"));
              }),
              ErrorKind::commutation);
    EXPECT_EQ(kind_of([] {
                  code_from_json(json::parse(R"({"schema":"qpr.css_code","version":2,"n":1})"));
              }),
              ErrorKind::parse);
}

TEST(LoadCode, RoundTripIsIdentity) {
    for (const auto& c : {build_surface_code(5), build_tile_code(weight6_tile(6)),
                          load_code(std::string(QPR_DATA_DIR) + "/codes/tanner_36_8_3.json")}) {
        const auto back = code_from_json(code_to_json(c));
        EXPECT_EQ(back.hx, c.hx);
        EXPECT_EQ(back.hz, c.hz);
        EXPECT_EQ(back.n, c.n);
        EXPECT_EQ(back.k, c.k);
        EXPECT_EQ(back.family, c.family);
        EXPECT_EQ(back.positions, c.positions);
        EXPECT_EQ(back.declared_distance, c.declared_distance);
        EXPECT_EQ(code_to_json(back).dump(), code_to_json(c).dump());
    }
}

TEST(LoadCode, BundledTannerCode) {
    const auto c = load_code(std::string(QPR_DATA_DIR) + "/codes/tanner_36_8_3.json");
    EXPECT_EQ(c.n, 36u);
    EXPECT_EQ(c.k, 8u);
    expect_css_invariants(c);
}

TEST(LoadCode, BundledRadialCode) {
    const auto c = load_code(std::string(QPR_DATA_DIR) + "/codes/radial_16_2_4.json");
    EXPECT_EQ(c.n, 16u);
    EXPECT_EQ(c.k, 2u);
    EXPECT_EQ(c.declared_distance, 4);
    expect_css_invariants(c);
}
