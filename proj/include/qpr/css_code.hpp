#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpr/error.hpp"
#include "qpr/gf2.hpp"
#include "qpr/graph.hpp"

namespace qpr {

struct GridPoint {
    int x = 0;
    int y = 0;
    auto operator<=>(const GridPoint&) const = default;
};

enum class DistanceKind { exact, upper_bound };

struct DistanceEstimate {
    int value = 0;
    DistanceKind kind = DistanceKind::upper_bound;
    std::size_t trials_used = 0;
};

// Node order everywhere: data qubits, then X checks, then Z checks.
struct CssCode {
    BinaryMatrix hx;
    BinaryMatrix hz;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<DistanceEstimate> d_est;
    std::optional<int> declared_distance;
    std::string family = "custom";
    std::optional<std::vector<GridPoint>> positions;

    std::size_t num_nodes() const { return n + hx.rows() + hz.rows(); }
    std::size_t x_node(std::size_t row) const { return n + row; }
    std::size_t z_node(std::size_t row) const { return n + hx.rows() + row; }

    // Distance used for reporting: declared value first, then any estimate.
    std::optional<int> distance() const {
        if (declared_distance) return declared_distance;
        if (d_est) return d_est->value;
        return std::nullopt;
    }
};

// Validates dimensions and commutation and fills in n, k.
inline CssCode make_css_code(BinaryMatrix hx, BinaryMatrix hz, std::string family = "custom",
                             std::optional<int> declared_distance = std::nullopt) {
    if (hx.cols() != hz.cols())
        fail(ErrorKind::dimension, "H_X has " + std::to_string(hx.cols()) + " columns but H_Z has " +
                                       std::to_string(hz.cols()));
    if (!orthogonal(hx, hz)) fail(ErrorKind::commutation, "H_X H_Z^T != 0 over GF(2)");
    CssCode c;
    c.n = hx.cols();
    const std::size_t rx = rank(hx);
    const std::size_t rz = rank(hz);
    c.k = c.n - rx - rz;
    c.hx = std::move(hx);
    c.hz = std::move(hz);
    c.family = std::move(family);
    c.declared_distance = declared_distance;
    return c;
}

enum class NodeKind { data, check_x, check_z };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::data: return "data";
        case NodeKind::check_x: return "check_x";
        case NodeKind::check_z: return "check_z";
    }
    return "?";
}

struct ConnectivityGraph : Graph {
    std::vector<NodeKind> kinds;
};

// Edges are (data, check) pairs: H_X entries in row-major order, then H_Z.
inline ConnectivityGraph connectivity_graph(const CssCode& code) {
    if (!orthogonal(code.hx, code.hz)) fail(ErrorKind::commutation, "code violates CSS commutation");
    ConnectivityGraph g;
    g.num_nodes = code.num_nodes();
    g.kinds.assign(g.num_nodes, NodeKind::data);
    for (std::size_t r = 0; r < code.hx.rows(); ++r) g.kinds[code.x_node(r)] = NodeKind::check_x;
    for (std::size_t r = 0; r < code.hz.rows(); ++r) g.kinds[code.z_node(r)] = NodeKind::check_z;
    g.edges.reserve(code.hx.popcount() + code.hz.popcount());
    for (const auto& [r, c] : code.hx.entries()) g.edges.push_back({c, code.x_node(r)});
    for (const auto& [r, c] : code.hz.entries()) g.edges.push_back({c, code.z_node(r)});
    return g;
}

}  // namespace qpr
