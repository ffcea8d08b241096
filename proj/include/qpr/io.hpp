#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qpr/bb_code.hpp"
#include "qpr/metrics.hpp"
#include "qpr/routing.hpp"
#include "qpr/tile_code.hpp"

namespace qpr {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, path.string() + ": " + e.what());
    }
}

// Writes through a temporary file so readers never see a partial document.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) fail(ErrorKind::config, "cannot write " + tmp.string());
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

inline void write_json(const std::filesystem::path& path, const json& j) { write_text_atomic(path, j.dump(1) + "\n"); }

inline void check_schema(const json& j, const std::string& schema) {
    if (!j.is_object() || !j.contains("schema")) fail(ErrorKind::parse, "missing schema field, expected " + schema);
    if (j.at("schema") != schema) fail(ErrorKind::parse, "schema is " + j.at("schema").dump() + ", expected " + schema);
    const int v = j.value("version", -1);
    if (v != kSchemaVersion)
        fail(ErrorKind::parse, schema + " version " + std::to_string(v) + " not supported (expected " +
                                   std::to_string(kSchemaVersion) + ")");
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorKind::parse, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, std::string("bad field '") + key + "': " + e.what());
    }
}

// ---- codes -----------------------------------------------------------------

inline json code_to_json(const CssCode& c) {
    json j;
    j["schema"] = "qpr.css_code";
    j["version"] = kSchemaVersion;
    j["family"] = c.family;
    j["n"] = c.n;
    j["rows_x"] = c.hx.rows();
    j["rows_z"] = c.hz.rows();
    if (c.declared_distance)
        j["distance"] = *c.declared_distance;
    else if (c.d_est && c.d_est->kind == DistanceKind::exact)
        j["distance"] = c.d_est->value;
    auto entries = [](const BinaryMatrix& m) {
        json a = json::array();
        for (const auto& [r, col] : m.entries()) a.push_back({r, col});
        return a;
    };
    j["hx"] = entries(c.hx);
    j["hz"] = entries(c.hz);
    if (c.positions) {
        json p = json::array();
        for (const auto& q : *c.positions) p.push_back({q.x, q.y});
        j["positions"] = p;
    }
    return j;
}

inline CssCode code_from_json(const json& j) {
    check_schema(j, "qpr.css_code");
    const auto n = field<std::size_t>(j, "n");
    const auto rx = j.contains("rows_x") ? field<std::size_t>(j, "rows_x") : 0;
    const auto rz = j.contains("rows_z") ? field<std::size_t>(j, "rows_z") : 0;
    auto entries = [&](const char* key) {
        std::vector<BinaryMatrix::Entry> e;
        if (!j.contains(key)) return e;
        for (const auto& p : j.at(key)) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
                fail(ErrorKind::parse, std::string("entries of '") + key + "' must be [row, col] integer pairs");
            const auto r = p[0].get<long long>(), c = p[1].get<long long>();
            if (r < 0 || c < 0) fail(ErrorKind::dimension, "negative matrix index");
            e.emplace_back(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
        return e;
    };
    std::optional<int> d;
    if (j.contains("distance")) d = field<int>(j, "distance");
    CssCode code = make_css_code(BinaryMatrix(rx, n, entries("hx")), BinaryMatrix(rz, n, entries("hz")),
                                 j.value("family", std::string("custom")), d);
    if (j.contains("positions")) {
        std::vector<GridPoint> pos;
        for (const auto& p : j.at("positions")) {
            if (!p.is_array() || p.size() != 2) fail(ErrorKind::parse, "positions must be [x, y] pairs");
            pos.push_back({p[0].get<int>(), p[1].get<int>()});
        }
        if (pos.size() != code.num_nodes())
            fail(ErrorKind::dimension, "positions list has " + std::to_string(pos.size()) + " entries, expected " +
                                           std::to_string(code.num_nodes()));
        code.positions = std::move(pos);
    }
    return code;
}

inline CssCode load_code(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::parse, "code file not found: " + path.string());
    return code_from_json(read_json(path));
}

inline void save_code(const std::filesystem::path& path, const CssCode& c) { write_json(path, code_to_json(c)); }

// Positions-only file: same container, node id -> [x, y].
inline std::vector<GridPoint> load_positions(const std::filesystem::path& path) {
    const json j = read_json(path);
    check_schema(j, "qpr.positions");
    std::vector<GridPoint> pos;
    for (const auto& p : field<json>(j, "positions")) pos.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    return pos;
}

inline BBSpec bb_spec_from_json(const json& j) {
    check_schema(j, "qpr.bb_config");
    BBSpec s;
    s.l = field<int>(j, "l");
    s.m = field<int>(j, "m");
    auto monos = [&](const char* key) {
        std::vector<Monomial> out;
        for (const auto& p : field<json>(j, key)) out.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
        return out;
    };
    s.a = monos("a");
    s.b = monos("b");
    s.shift = j.value("shift", 0);
    if (j.contains("distance")) s.declared_distance = field<int>(j, "distance");
    return s;
}

inline json bb_spec_to_json(const BBSpec& s) {
    json j{{"schema", "qpr.bb_config"}, {"version", kSchemaVersion}, {"l", s.l}, {"m", s.m}, {"shift", s.shift}};
    for (const auto* key : {"a", "b"}) {
        json a = json::array();
        for (const auto& mono : (std::string(key) == "a" ? s.a : s.b)) a.push_back({mono.i, mono.j});
        j[key] = a;
    }
    if (s.declared_distance) j["distance"] = *s.declared_distance;
    return j;
}

inline TileSpec tile_spec_from_json(const json& j) {
    check_schema(j, "qpr.tile_config");
    TileSpec s;
    s.width = field<int>(j, "width");
    s.height = field<int>(j, "height");
    auto tile = [&](const char* key) {
        std::vector<TileOffset> out;
        if (!j.contains(key)) return out;
        for (const auto& o : j.at(key)) {
            const auto kind = o.at(0).get<std::string>();
            if (kind != "h" && kind != "v") fail(ErrorKind::parse, "tile offset kind must be \"h\" or \"v\"");
            out.push_back({kind == "h" ? EdgeKind::horizontal : EdgeKind::vertical, o.at(1).get<int>(),
                           o.at(2).get<int>()});
        }
        return out;
    };
    s.x_tile = tile("x_tile");
    s.z_tile = tile("z_tile");
    if (j.contains("heuristic")) s.heuristic = parse_heuristic(field<std::string>(j, "heuristic"));
    s.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("manual_positions")) {
        const auto& m = j.at("manual_positions");
        s.manual_positions = std::make_pair(GridPoint{m.at("x").at(0).get<int>(), m.at("x").at(1).get<int>()},
                                            GridPoint{m.at("z").at(0).get<int>(), m.at("z").at(1).get<int>()});
    }
    if (j.contains("distance")) s.declared_distance = field<int>(j, "distance");
    return s;
}

// ---- routed layouts --------------------------------------------------------

// Keeps only the cells where the step direction changes.
inline json compress_path(const std::vector<Cell3>& path) {
    json out = json::array();
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0 && i + 1 < path.size()) {
            const Cell3 a = path[i - 1], b = path[i], c = path[i + 1];
            if (b.x - a.x == c.x - b.x && b.y - a.y == c.y - b.y && b.z - a.z == c.z - b.z) continue;
        }
        out.push_back({path[i].x, path[i].y, path[i].z});
    }
    return out;
}

inline std::vector<Cell3> expand_path(const json& verts) {
    std::vector<Cell3> out;
    for (const auto& v : verts) {
        const Cell3 c{v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>()};
        if (!out.empty()) {
            const Cell3 p = out.back();
            const int steps = std::max({std::abs(c.x - p.x), std::abs(c.y - p.y), std::abs(c.z - p.z)});
            if (steps == 0) fail(ErrorKind::parse, "repeated path vertex");
            const int sx = (c.x - p.x) / steps, sy = (c.y - p.y) / steps, sz = (c.z - p.z) / steps;
            if (Cell3{p.x + sx * steps, p.y + sy * steps, p.z + sz * steps} != c)
                fail(ErrorKind::parse, "path segment is not a straight unit-step run");
            for (int s = 1; s <= steps; ++s) out.push_back({p.x + sx * s, p.y + sy * s, p.z + sz * s});
        } else {
            out.push_back(c);
        }
    }
    return out;
}

inline json routing_config_to_json(const RoutingConfig& c) {
    json j{{"grid_size", c.grid_size},   {"edge_margin", c.edge_margin},
           {"node_size", c.node_size},   {"max_bumps", c.max_bumps},
           {"max_length_factor", c.max_length_factor}, {"max_tiers", c.max_tiers},
           {"bump_penalty", c.bump_penalty}};
    j["max_tsvs"] = c.max_tsvs ? json(*c.max_tsvs) : json(nullptr);
    return j;
}

inline RoutingConfig routing_config_from_json(const json& j, RoutingConfig c = {}) {
    auto positive = [](const char* key, double v) {
        if (!(v > 0)) fail(ErrorKind::config, std::string(key) + " must be positive");
    };
    if (j.contains("grid_size")) c.grid_size = field<int>(j, "grid_size");
    if (j.contains("edge_margin")) c.edge_margin = field<int>(j, "edge_margin");
    if (j.contains("node_size")) c.node_size = field<int>(j, "node_size");
    if (j.contains("max_bumps")) c.max_bumps = field<int>(j, "max_bumps");
    if (j.contains("max_length_factor")) c.max_length_factor = field<double>(j, "max_length_factor");
    if (j.contains("max_tiers")) c.max_tiers = field<int>(j, "max_tiers");
    if (j.contains("bump_penalty")) c.bump_penalty = field<double>(j, "bump_penalty");
    if (j.contains("max_tsvs")) {
        if (j.at("max_tsvs").is_null())
            c.max_tsvs.reset();
        else
            c.max_tsvs = field<int>(j, "max_tsvs");
    }
    positive("grid_size", c.grid_size);
    positive("max_length_factor", c.max_length_factor);
    if (c.edge_margin < 0 || c.node_size < 0 || c.max_bumps < 0 || c.max_tiers < 0)
        fail(ErrorKind::config, "routing limits must be nonnegative");
    return c;
}

struct LayoutMeta {
    std::string family;
    std::size_t n = 0, k = 0;
    std::optional<int> d;
};

inline json layout_to_json(const RoutedLayout& rl, const LayoutMeta& meta = {}) {
    json j;
    j["schema"] = "qpr.routed_layout";
    j["version"] = kSchemaVersion;
    j["code"] = {{"family", meta.family}, {"n", meta.n}, {"k", meta.k}};
    j["code"]["d"] = meta.d ? json(*meta.d) : json(nullptr);
    j["grid_size"] = rl.layout.grid_size;
    j["num_tiers"] = rl.num_tiers;
    j["seed"] = rl.seed;
    j["config"] = routing_config_to_json(rl.config);
    json nodes = json::array();
    for (std::size_t i = 0; i < rl.layout.pos.size(); ++i) {
        json nd = {rl.layout.pos[i].x, rl.layout.pos[i].y};
        nd.push_back(i < rl.kinds.size() ? to_string(rl.kinds[i]) : "node");
        nodes.push_back(nd);
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto& e : rl.edges)
        edges.push_back({{"id", e.id},
                         {"u", e.u},
                         {"v", e.v},
                         {"tier", e.tier},
                         {"bumps", e.bumps},
                         {"tsvs", e.tsvs},
                         {"length", e.length},
                         {"method", to_string(e.method)},
                         {"path", compress_path(e.path)}});
    j["edges"] = edges;
    return j;
}

inline RoutedLayout layout_from_json(const json& j, LayoutMeta* meta = nullptr) {
    check_schema(j, "qpr.routed_layout");
    RoutedLayout rl;
    rl.layout.grid_size = field<int>(j, "grid_size");
    rl.num_tiers = field<int>(j, "num_tiers");
    rl.seed = field<std::uint64_t>(j, "seed");
    rl.config = routing_config_from_json(field<json>(j, "config"));
    bool untyped = false;
    for (const auto& nd : field<json>(j, "nodes")) {
        rl.layout.pos.push_back({nd.at(0).get<int>(), nd.at(1).get<int>()});
        const auto kind = nd.at(2).get<std::string>();
        untyped = untyped || kind == "node";
        rl.kinds.push_back(kind == "check_x" ? NodeKind::check_x
                                             : kind == "check_z" ? NodeKind::check_z : NodeKind::data);
    }
    if (untyped) rl.kinds.clear();
    for (const auto& e : field<json>(j, "edges")) {
        RoutedEdge re;
        re.id = e.at("id").get<std::size_t>();
        re.u = e.at("u").get<std::size_t>();
        re.v = e.at("v").get<std::size_t>();
        re.tier = e.at("tier").get<int>();
        re.bumps = e.at("bumps").get<int>();
        re.tsvs = e.at("tsvs").get<int>();
        re.length = e.at("length").get<double>();
        re.method = e.at("method").get<std::string>() == "astar" ? RouteMethod::astar : RouteMethod::straight;
        re.path = expand_path(e.at("path"));
        rl.edges.push_back(std::move(re));
    }
    if (meta && j.contains("code")) {
        const auto& c = j.at("code");
        meta->family = c.value("family", std::string());
        meta->n = c.value("n", std::size_t{0});
        meta->k = c.value("k", std::size_t{0});
        if (c.contains("d") && !c.at("d").is_null()) meta->d = c.at("d").get<int>();
    }
    return rl;
}

// ---- reports ---------------------------------------------------------------
// Wall-clock time is kept out of report files so they stay reproducible; it
// goes to the runtime log instead.

inline std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

inline std::string report_csv_header() {
    return "family,n,k,d,d_kind,eta_L,q_tiers,q_length,q_bumps,q_tsvs,c_tiers,c_length,c_bumps,c_tsvs,C_hw,seed,edges";
}

inline std::string report_csv_row(const CodeReport& r) {
    std::ostringstream os;
    os << r.family << ',' << r.n << ',' << r.k << ',' << r.d << ',' << (r.d_upper_bound ? "upper_bound" : "exact")
       << ',' << fixed(r.efficiency, 2);
    for (double q : r.params.values()) os << ',' << fixed(q, 4);
    for (double c : r.c) os << ',' << fixed(c, 4);
    os << ',' << fixed(r.c_hw, 4) << ',' << r.seed << ',' << r.edges;
    return os.str();
}

inline json report_to_json(const CodeReport& r) {
    json j{{"family", r.family}, {"n", r.n}, {"k", r.k}, {"d", r.d},
           {"d_kind", r.d_upper_bound ? "upper_bound" : "exact"}, {"eta_L", r.efficiency}, {"C_hw", r.c_hw},
           {"seed", r.seed}, {"edges", r.edges}};
    const auto q = r.params.values();
    for (std::size_t i = 0; i < 4; ++i) {
        j[std::string("q_") + kParamNames[i]] = q[i];
        j[std::string("c_") + kParamNames[i]] = r.c[i];
    }
    return j;
}

inline CodeReport report_from_json(const json& j) {
    CodeReport r;
    r.family = j.value("family", std::string());
    r.n = j.value("n", std::size_t{0});
    r.k = j.value("k", std::size_t{0});
    r.d = j.value("d", 0);
    r.d_upper_bound = j.value("d_kind", std::string("exact")) == "upper_bound";
    r.efficiency = j.value("eta_L", 0.0);
    r.params.q_tiers = field<double>(j, "q_tiers");
    r.params.q_length = field<double>(j, "q_length");
    r.params.q_bumps = field<double>(j, "q_bumps");
    r.params.q_tsvs = field<double>(j, "q_tsvs");
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = j.value(std::string("c_") + kParamNames[i], 0.0);
    r.c_hw = j.value("C_hw", 1.0);
    r.seed = j.value("seed", std::uint64_t{0});
    r.edges = j.value("edges", std::size_t{0});
    return r;
}

}  // namespace qpr
