#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>

#include "qpr/distance.hpp"
#include "qpr/io.hpp"
#include "qpr/placement.hpp"
#include "qpr/radial_code.hpp"
#include "qpr/surface_code.hpp"

namespace qpr {

enum class PlacementMode { spring, custom_positions, square_grid };

inline const char* to_string(PlacementMode m) {
    switch (m) {
        case PlacementMode::spring: return "auto";
        case PlacementMode::custom_positions: return "custom_positions";
        case PlacementMode::square_grid: return "square_grid";
    }
    return "?";
}

inline PlacementMode parse_placement_mode(const std::string& s) {
    if (s == "auto") return PlacementMode::spring;
    if (s == "custom_positions") return PlacementMode::custom_positions;
    if (s == "square_grid") return PlacementMode::square_grid;
    fail(ErrorKind::config, "unknown placement mode '" + s + "' (auto, custom_positions, square_grid)");
}

// family: surface | bb | radial | tile | file
struct CodeSource {
    std::string family = "surface";
    int d = 3;
    BBSpec bb;
    RadialSpec radial;
    TileSpec tile;
    std::filesystem::path path;  // for family "file"
};

struct RunConfig {
    std::string name;
    CodeSource code;
    PlacementMode placement = PlacementMode::spring;
    std::optional<std::filesystem::path> positions_file;
    RoutingConfig routing;
    ComplexityModel model;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir;  // empty: QPR_OUTPUT_DIR, then the working directory
    DistanceOptions distance;

    std::string label() const {
        if (!name.empty()) return name;
        if (code.family == "surface") return "surface_d" + std::to_string(code.d);
        if (code.family == "radial") return "radial_r" + std::to_string(code.radial.r) + "_s" + std::to_string(code.radial.s);
        if (code.family == "tile") return std::string("tile_") + to_string(code.tile.heuristic);
        if (code.family == "file") return code.path.stem().string();
        return code.family;
    }

    std::filesystem::path resolved_output_dir() const {
        if (!output_dir.empty()) return output_dir;
        if (const char* env = std::getenv("QPR_OUTPUT_DIR"); env && *env) return env;
        return ".";
    }
};

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
    if (p.is_absolute() || base.empty()) return p;
    return base / p;
}

inline std::array<double, 4> quad(const json& j, const char* key) {
    const auto v = field<std::vector<double>>(j, key);
    if (v.size() != 4) fail(ErrorKind::config, std::string(key) + " needs four values (tiers, length, bumps, tsvs)");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace detail

// Relative paths inside the document are taken relative to base_dir.
inline CodeSource code_source_from_json(const json& j, const std::filesystem::path& base_dir) {
    CodeSource src;
    src.family = field<std::string>(j, "family");
    if (src.family == "surface") {
        src.d = j.value("d", 3);
    } else if (src.family == "bb") {
        src.bb = j.contains("config") ? bb_spec_from_json(read_json(detail::resolve(field<std::string>(j, "config"), base_dir)))
                                      : bb_spec_from_json(j.at("spec"));
    } else if (src.family == "radial") {
        src.radial.r = j.value("r", 2);
        src.radial.s = j.value("s", 2);
        src.radial.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("min_distance")) src.radial.min_distance = field<int>(j, "min_distance");
    } else if (src.family == "tile") {
        src.tile = j.contains("config") ? tile_spec_from_json(read_json(detail::resolve(field<std::string>(j, "config"), base_dir)))
                                        : tile_spec_from_json(j.at("spec"));
        if (j.contains("heuristic")) src.tile.heuristic = parse_heuristic(field<std::string>(j, "heuristic"));
    } else if (src.family == "file") {
        src.path = detail::resolve(field<std::string>(j, "path"), base_dir);
    } else {
        fail(ErrorKind::config, "unknown code family '" + src.family + "' (surface, bb, radial, tile, file)");
    }
    return src;
}

inline ComplexityModel model_from_json(const json& j, ComplexityModel m = {}) {
    if (j.contains("baseline")) m.baseline = detail::quad(j, "baseline");
    if (j.contains("optimistic")) m.optimistic = detail::quad(j, "optimistic");
    if (j.contains("weights")) m.weights = detail::quad(j, "weights");
    m.validate();
    return m;
}

inline RunConfig run_config_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
    check_schema(j, "qpr.run_config");
    RunConfig c;
    c.name = j.value("name", std::string());
    c.code = code_source_from_json(field<json>(j, "code"), base_dir);
    if (j.contains("placement")) c.placement = parse_placement_mode(field<std::string>(j, "placement"));
    if (j.contains("positions")) c.positions_file = detail::resolve(field<std::string>(j, "positions"), base_dir);
    if (j.contains("routing")) c.routing = routing_config_from_json(j.at("routing"));
    if (j.contains("model")) c.model = model_from_json(j.at("model"));
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("output_dir")) c.output_dir = field<std::string>(j, "output_dir");
    if (j.contains("distance")) {
        const auto& d = j.at("distance");
        c.distance.trials = d.value("trials", c.distance.trials);
        c.distance.exhaustive_threshold = d.value("exhaustive_threshold", c.distance.exhaustive_threshold);
        c.distance.seed = d.value("seed", c.distance.seed);
    }
    if (c.distance.trials < 1) fail(ErrorKind::config, "distance trials must be at least 1");
    return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    return run_config_from_json(read_json(path), path.parent_path());
}

// Tile codes take the run seed so repeats sample different random check placements.
inline CssCode build_code(const CodeSource& src, std::uint64_t run_seed, ToricLayoutInfo* toric = nullptr) {
    if (src.family == "surface") return build_surface_code(src.d);
    if (src.family == "bb") return build_bb_code(src.bb, toric);
    if (src.family == "radial") {
        auto c = build_radial_code(src.radial);
        c.family = "radial";
        return c;
    }
    if (src.family == "tile") {
        TileSpec spec = src.tile;
        spec.seed = run_seed;
        return build_tile_code(spec);
    }
    if (src.family == "file") return load_code(src.path);
    fail(ErrorKind::config, "unknown code family '" + src.family + "'");
}

struct LayoutRun {
    CssCode code;
    ConnectivityGraph graph;
    PlacementResult placement;
    RoutedLayout routed;
    CodeReport report;
    double place_s = 0;
    double route_s = 0;
};

inline LayoutMeta layout_meta(const CssCode& code) {
    return {code.family, code.n, code.k, code.distance()};
}

inline std::optional<std::vector<GridPoint>> positions_for(const RunConfig& cfg, const CssCode& code) {
    switch (cfg.placement) {
        case PlacementMode::spring:
            return std::nullopt;
        case PlacementMode::square_grid:
            if (cfg.code.family == "radial" || cfg.code.family == "file")
                fail(ErrorKind::config, "square_grid placement needs a family with a position generator "
                                        "(surface, bb, tile), got " + cfg.code.family);
            if (!code.positions)
                fail(ErrorKind::config, "this " + cfg.code.family + " configuration has no lattice positions");
            return code.positions;
        case PlacementMode::custom_positions:
            if (cfg.positions_file) return load_positions(*cfg.positions_file);
            if (code.positions) return code.positions;
            fail(ErrorKind::config, "custom_positions placement needs a positions file or a code file with positions");
    }
    return std::nullopt;
}

inline void fill_report(CodeReport& r, const CssCode& code, const RoutedLayout& rl, const RunConfig& cfg) {
    r.family = code.family;
    r.n = code.n;
    r.k = code.k;
    r.seed = cfg.seed;
    r.edges = rl.edges.size();
    if (code.declared_distance) {
        r.d = *code.declared_distance;
    } else if (code.d_est) {
        r.d = code.d_est->value;
        r.d_upper_bound = code.d_est->kind == DistanceKind::upper_bound;
    } else if (code.k > 0) {
        const auto est = estimate_distance(code, cfg.distance);
        r.d = est.value;
        r.d_upper_bound = est.kind == DistanceKind::upper_bound;
    }
    r.efficiency = r.d > 0 ? logical_efficiency_reported(code.n, code.k, r.d) : 0.0;
    r.params = extract_params(rl);
    rescore(r, cfg.model);
}

// codes -> placement -> routing -> metrics. Throws RoutingError on failure.
inline LayoutRun run_pipeline(const RunConfig& cfg, const std::optional<CssCode>& prebuilt = std::nullopt) {
    using clock = std::chrono::steady_clock;
    LayoutRun run;
    run.code = prebuilt ? *prebuilt : build_code(cfg.code, cfg.seed);
    run.graph = connectivity_graph(run.code);
    const auto custom = positions_for(cfg, run.code);
    PlacementConfig pc;
    pc.seed = cfg.seed;
    pc.grid_size = cfg.routing.grid_size;
    const auto t0 = clock::now();
    run.placement = place(run.graph, pc, custom);
    const auto t1 = clock::now();
    run.routed = route_all(run.graph, run.placement.layout, run.placement.mps ? &*run.placement.mps : nullptr,
                           cfg.routing, cfg.seed);
    run.routed.kinds = run.graph.kinds;
    const auto t2 = clock::now();
    run.place_s = std::chrono::duration<double>(t1 - t0).count();
    run.route_s = std::chrono::duration<double>(t2 - t1).count();
    fill_report(run.report, run.code, run.routed, cfg);
    run.report.runtime_s = run.place_s + run.route_s;
    return run;
}

inline std::string serialize_layout(const LayoutRun& run) {
    return layout_to_json(run.routed, layout_meta(run.code)).dump(1) + "\n";
}

inline std::string runtime_log_header() { return "label,family,n,nodes,edges,seed,place_s,route_s,total_s"; }

// Appends one line per run; safe to call from concurrent batch workers.
inline void append_runtime_log(const std::filesystem::path& path, const std::string& label, const LayoutRun& run,
                               std::uint64_t seed) {
    static std::mutex mu;
    std::lock_guard lock(mu);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::app);
    if (!out) fail(ErrorKind::config, "cannot append to " + path.string());
    if (fresh) out << runtime_log_header() << '\n';
    out << label << ',' << run.code.family << ',' << run.code.n << ',' << run.graph.num_nodes << ','
        << run.graph.edges.size() << ',' << seed << ',' << fixed(run.place_s, 4) << ',' << fixed(run.route_s, 4) << ','
        << fixed(run.place_s + run.route_s, 4) << '\n';
}

}  // namespace qpr
