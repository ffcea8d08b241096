#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qpr/pipeline.hpp"
#include "qpr/svg.hpp"

namespace fs = std::filesystem;
using namespace qpr;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse:
        case ErrorKind::dimension:
        case ErrorKind::commutation: return 2;
        case ErrorKind::capacity: return 3;
        case ErrorKind::routing: return 4;
        case ErrorKind::config:
        case ErrorKind::parameter: return 5;
    }
    return 1;
}

struct CodeFlags {
    CLI::Option* family = nullptr;
    std::string family_v;
    CLI::Option* d = nullptr;
    int d_v = 3;
    CLI::Option* bb_config = nullptr;
    std::string bb_config_v;
    CLI::Option* tile_config = nullptr;
    std::string tile_config_v;
    CLI::Option* code_file = nullptr;
    std::string code_file_v;
    CLI::Option* r = nullptr;
    int r_v = 2;
    CLI::Option* s = nullptr;
    int s_v = 2;
    CLI::Option* code_seed = nullptr;
    std::uint64_t code_seed_v = 1;
    CLI::Option* min_distance = nullptr;
    int min_distance_v = 0;
    CLI::Option* heuristic = nullptr;
    std::string heuristic_v;

    void add(CLI::App* app) {
        family = app->add_option("--family", family_v, "surface, bb, radial, tile or file");
        d = app->add_option("--d", d_v, "surface code distance");
        bb_config = app->add_option("--bb-config", bb_config_v, "bivariate bicycle config file");
        tile_config = app->add_option("--tile-config", tile_config_v, "tile code config file");
        code_file = app->add_option("--code-file", code_file_v, "parity-check matrix file");
        r = app->add_option("--r", r_v, "radial code rings");
        s = app->add_option("--s", s_v, "radial code spokes");
        code_seed = app->add_option("--code-seed", code_seed_v, "radial instance seed");
        min_distance = app->add_option("--min-distance", min_distance_v, "resample radial instances below this distance");
        heuristic = app->add_option("--heuristic", heuristic_v, "tile check heuristic");
    }

    bool any() const {
        for (auto* o : {family, d, bb_config, tile_config, code_file, r, s, code_seed, min_distance, heuristic})
            if (o->count()) return true;
        return false;
    }

    void apply(CodeSource& src) const {
        if (family->count()) src.family = family_v;
        else if (code_file->count()) src.family = "file";
        else if (bb_config->count()) src.family = "bb";
        else if (tile_config->count()) src.family = "tile";
        if (d->count()) src.d = d_v;
        if (bb_config->count()) src.bb = bb_spec_from_json(read_json(bb_config_v));
        if (tile_config->count()) src.tile = tile_spec_from_json(read_json(tile_config_v));
        if (code_file->count()) src.path = code_file_v;
        if (r->count()) src.radial.r = r_v;
        if (s->count()) src.radial.s = s_v;
        if (code_seed->count()) src.radial.seed = code_seed_v;
        if (min_distance->count()) src.radial.min_distance = min_distance_v;
        if (heuristic->count()) src.tile.heuristic = parse_heuristic(heuristic_v);
        if (src.family == "bb" && src.bb.l == 0) fail(ErrorKind::config, "bb family needs --bb-config");
        if (src.family == "tile" && src.tile.width == 0) fail(ErrorKind::config, "tile family needs --tile-config");
        if (src.family == "file" && src.path.empty()) fail(ErrorKind::config, "file family needs --code-file");
    }
};

std::array<double, 4> parse_quad(const std::string& text, const char* what) {
    std::array<double, 4> out{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 4) break;
        try {
            out[i++] = std::stod(item);
        } catch (const std::exception&) {
            fail(ErrorKind::config, std::string(what) + ": '" + item + "' is not a number");
        }
    }
    if (i != 4 || std::getline(ss, item, ','))
        fail(ErrorKind::config, std::string(what) + " needs four comma-separated values");
    return out;
}

struct RunFlags {
    std::string config;
    CodeFlags code;
    std::string name, placement, positions, output_dir, weights, optimistic;
    std::uint64_t seed = 1;
    int grid_size = 0, edge_margin = 0, node_size = 0, max_bumps = 0, max_tsvs = 0, max_tiers = 0;
    double max_length_factor = 0;
    std::map<std::string, CLI::Option*> opts;

    void add(CLI::App* app) {
        app->add_option("--config", config, "run config file");
        code.add(app);
        opts["name"] = app->add_option("--name", name, "label used in output file names");
        opts["placement"] = app->add_option("--placement", placement, "auto, custom_positions or square_grid");
        opts["positions"] = app->add_option("--positions", positions, "custom positions file");
        opts["output_dir"] = app->add_option("--output-dir", output_dir, "output directory (default $QPR_OUTPUT_DIR)");
        opts["seed"] = app->add_option("--seed", seed, "placement and routing seed");
        opts["grid_size"] = app->add_option("--grid-size", grid_size);
        opts["edge_margin"] = app->add_option("--edge-margin", edge_margin);
        opts["node_size"] = app->add_option("--node-size", node_size);
        opts["max_bumps"] = app->add_option("--max-bumps", max_bumps);
        opts["max_tsvs"] = app->add_option("--max-tsvs", max_tsvs);
        opts["max_length_factor"] = app->add_option("--max-length-factor", max_length_factor);
        opts["max_tiers"] = app->add_option("--max-tiers", max_tiers);
        opts["weights"] = app->add_option("--weights", weights, "w_tiers,w_length,w_bumps,w_tsvs");
        opts["optimistic"] = app->add_option("--optimistic", optimistic, "p_tiers,p_length,p_bumps,p_tsvs");
    }

    bool set(const char* key) const { return opts.at(key)->count() > 0; }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config.empty()) cfg = load_run_config(config);
        else if (!code.any()) fail(ErrorKind::config, "give --config or code flags such as --family");
        code.apply(cfg.code);
        if (set("name")) cfg.name = name;
        if (set("placement")) cfg.placement = parse_placement_mode(placement);
        if (set("positions")) cfg.positions_file = positions;
        if (set("output_dir")) cfg.output_dir = output_dir;
        if (set("seed")) cfg.seed = seed;
        json r;
        if (set("grid_size")) r["grid_size"] = grid_size;
        if (set("edge_margin")) r["edge_margin"] = edge_margin;
        if (set("node_size")) r["node_size"] = node_size;
        if (set("max_bumps")) r["max_bumps"] = max_bumps;
        if (set("max_tsvs")) r["max_tsvs"] = max_tsvs;
        if (set("max_length_factor")) r["max_length_factor"] = max_length_factor;
        if (set("max_tiers")) r["max_tiers"] = max_tiers;
        if (!r.empty()) cfg.routing = routing_config_from_json(r, cfg.routing);
        if (set("weights")) cfg.model.weights = parse_quad(weights, "--weights");
        if (set("optimistic")) cfg.model.optimistic = parse_quad(optimistic, "--optimistic");
        cfg.model.validate();
        return cfg;
    }
};

std::string file_stem(const RunConfig& cfg) { return cfg.label() + "_s" + std::to_string(cfg.seed); }

json report_row(const std::string& label, const CodeReport& r) {
    json j = report_to_json(r);
    j["label"] = label;
    return j;
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const CodeFlags& flags, std::uint64_t seed, const std::string& out) {
    CodeSource src;
    flags.apply(src);
    CssCode code = build_code(src, seed);
    if (out.empty()) {
        std::cout << code_to_json(code).dump(1) << "\n";
    } else {
        save_code(out, code);
        std::cerr << "wrote " << out << " [[" << code.n << "," << code.k << "]] with " << code.hx.rows() << "+"
                  << code.hz.rows() << " checks\n";
    }
    return 0;
}

// ---- layout ----------------------------------------------------------------

int cmd_layout(const RunConfig& cfg) {
    const fs::path dir = cfg.resolved_output_dir();
    LayoutRun run;
    try {
        run = run_pipeline(cfg);
    } catch (const RoutingError& e) {
        std::cerr << "routing failed: " << e.what() << "\nunrouted edges:";
        for (auto id : e.unrouted()) std::cerr << ' ' << id;
        std::cerr << '\n';
        return exit_code(ErrorKind::routing);
    }
    const auto stem = file_stem(cfg);
    write_text_atomic(dir / (stem + ".layout.json"), serialize_layout(run));
    write_json(dir / (stem + ".report.json"), report_row(cfg.label(), run.report));
    write_text_atomic(dir / (stem + ".report.csv"),
                      "label," + report_csv_header() + "\n" + cfg.label() + "," + report_csv_row(run.report) + "\n");
    append_runtime_log(dir / "runtime_log.csv", cfg.label(), run, cfg.seed);
    const auto& r = run.report;
    std::cout << cfg.label() << " [[" << r.n << "," << r.k << "," << (r.d_upper_bound ? "<=" : "") << r.d
              << "]] eta_L=" << fixed(r.efficiency, 2) << " tiers=" << r.params.q_tiers
              << " length=" << fixed(r.params.q_length, 2) << " bumps=" << fixed(r.params.q_bumps, 2)
              << " tsvs=" << fixed(r.params.q_tsvs, 2) << " C_hw=" << fixed(r.c_hw, 3) << " ("
              << fixed(run.place_s + run.route_s, 2) << " s)\n";
    std::cout << "wrote " << (dir / (stem + ".layout.json")).string() << "\n";
    return 0;
}

// ---- render ----------------------------------------------------------------

int cmd_render(const std::string& layout_path, const std::string& out_dir) {
    const auto rl = layout_from_json(read_json(layout_path));
    const auto svgs = render_tiers(rl);
    const fs::path dir = out_dir.empty() ? fs::path(layout_path).parent_path() : fs::path(out_dir);
    std::string stem = fs::path(layout_path).filename().string();
    if (const auto pos = stem.find(".layout.json"); pos != std::string::npos) stem = stem.substr(0, pos);
    for (std::size_t t = 0; t < svgs.size(); ++t) {
        const auto path = dir / (stem + "_tier" + std::to_string(t) + ".svg");
        write_text_atomic(path, svgs[t]);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

// ---- report ----------------------------------------------------------------

struct BatchRow {
    std::string label;
    RunConfig cfg;
    std::optional<CodeReport> report;
    std::string error;
};

int cmd_report(const std::string& manifest_path, int parallel_override, const std::string& out_override,
               bool write_layouts) {
    const json m = read_json(manifest_path);
    check_schema(m, "qpr.batch_manifest");
    const fs::path base = fs::path(manifest_path).parent_path();
    const auto& entries = field<json>(m, "entries");
    if (!entries.is_array() || entries.empty()) fail(ErrorKind::config, "manifest has no entries");
    int parallel = parallel_override > 0 ? parallel_override : m.value("parallelism", 1);
    if (parallel < 1) fail(ErrorKind::config, "parallelism must be at least 1");

    fs::path dir = out_override.empty() ? fs::path(m.value("output_dir", std::string())) : fs::path(out_override);
    if (dir.empty()) {
        const char* env = std::getenv("QPR_OUTPUT_DIR");
        dir = env && *env ? fs::path(env) : fs::path(".");
    }

    std::vector<BatchRow> rows;
    for (const auto& e : entries) {
        RunConfig cfg;
        if (e.at("config").is_string()) {
            cfg = load_run_config(detail::resolve(e.at("config").get<std::string>(), base));
        } else {
            json c = e.at("config");
            c.emplace("schema", "qpr.run_config");
            c.emplace("version", kSchemaVersion);
            cfg = run_config_from_json(c, base);
        }
        const int repeat = e.value("repeat", 1);
        if (repeat < 1) fail(ErrorKind::config, "repeat must be at least 1");
        const auto base_seed = cfg.seed;
        for (int i = 0; i < repeat; ++i) {
            RunConfig c = cfg;
            c.seed = base_seed + static_cast<std::uint64_t>(i);
            rows.push_back({c.label(), c, std::nullopt, {}});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            auto& row = rows[i];
            try {
                const auto run = run_pipeline(row.cfg);
                row.report = run.report;
                append_runtime_log(dir / "runtime_log.csv", row.label, run, row.cfg.seed);
                if (write_layouts) write_text_atomic(dir / (file_stem(row.cfg) + ".layout.json"), serialize_layout(run));
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(parallel, static_cast<int>(rows.size())); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // Table layout: grouped by family, ascending efficiency within a family.
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = rows[a];
        const auto& rb = rows[b];
        const std::string fa = ra.report ? ra.report->family : ra.cfg.code.family;
        const std::string fb = rb.report ? rb.report->family : rb.cfg.code.family;
        if (fa != fb) return fa < fb;
        const double ea = ra.report ? ra.report->efficiency : 0, eb = rb.report ? rb.report->efficiency : 0;
        return ea < eb;
    });

    std::string csv = "label," + report_csv_header() + ",error\n";
    std::string scatter = "label,family,eta_L,C_hw\n";
    json table = {{"schema", "qpr.report"}, {"version", kSchemaVersion}, {"rows", json::array()}};
    std::size_t failures = 0;
    for (auto i : order) {
        const auto& row = rows[i];
        if (row.report) {
            csv += row.label + "," + report_csv_row(*row.report) + ",\n";
            scatter += row.label + "," + row.report->family + "," + fixed(row.report->efficiency, 2) + "," +
                       fixed(row.report->c_hw, 4) + "\n";
            table["rows"].push_back(report_row(row.label, *row.report));
        } else {
            ++failures;
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            csv += row.label + "," + row.cfg.code.family + std::string(15, ',') + std::to_string(row.cfg.seed) + ",," +
                   msg + "\n";
            table["rows"].push_back({{"label", row.label}, {"seed", row.cfg.seed}, {"error", row.error}});
        }
    }

    // Mean and spread per label, in manifest order.
    std::string summary = "label,family,n,k,d,eta_L,runs,failures,C_hw_mean,C_hw_std\n";
    std::vector<std::string> labels;
    for (const auto& row : rows)
        if (std::find(labels.begin(), labels.end(), row.label) == labels.end()) labels.push_back(row.label);
    for (const auto& label : labels) {
        std::vector<double> c;
        std::size_t fails = 0;
        const CodeReport* any = nullptr;
        for (const auto& row : rows) {
            if (row.label != label) continue;
            if (row.report) {
                c.push_back(row.report->c_hw);
                any = &*row.report;
            } else {
                ++fails;
            }
        }
        double mean = 0, var = 0;
        for (double v : c) mean += v / static_cast<double>(c.size());
        for (double v : c) var += (v - mean) * (v - mean);
        const double sd = c.size() > 1 ? std::sqrt(var / static_cast<double>(c.size() - 1)) : 0.0;
        summary += label + "," + (any ? any->family + "," + std::to_string(any->n) + "," + std::to_string(any->k) +
                                            "," + std::to_string(any->d) + "," + fixed(any->efficiency, 2)
                                      : std::string(",,,,")) +
                   "," + std::to_string(c.size() + fails) + "," + std::to_string(fails) + "," +
                   (c.empty() ? "" : fixed(mean, 4)) + "," + (c.empty() ? "" : fixed(sd, 4)) + "\n";
    }

    write_text_atomic(dir / "report.csv", csv);
    write_json(dir / "report.json", table);
    write_text_atomic(dir / "scatter.csv", scatter);
    write_text_atomic(dir / "summary.csv", summary);
    std::cout << summary;
    std::cout << rows.size() - failures << " of " << rows.size() << " runs succeeded; wrote "
              << (dir / "report.csv").string() << "\n";
    return 0;
}

// ---- sweep -----------------------------------------------------------------

std::vector<std::pair<std::string, CodeReport>> load_reports(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, CodeReport>> out;
    for (const auto& p : paths) {
        const json j = read_json(p);
        const json rows = j.contains("rows") ? j.at("rows") : (j.is_array() ? j : json::array({j}));
        for (const auto& r : rows) {
            if (r.contains("error")) continue;
            out.emplace_back(r.value("label", r.value("family", std::string())), report_from_json(r));
        }
    }
    if (out.empty()) fail(ErrorKind::config, "no successful report rows to sweep");
    return out;
}

SweepParameter parse_param(const std::string& s) {
    for (std::size_t i = 0; i < 4; ++i)
        if (s == kParamNames[i]) return static_cast<SweepParameter>(i);
    fail(ErrorKind::config, "unknown parameter '" + s + "' (tiers, length, bumps, tsvs)");
}

void emit(const std::string& text, const std::string& out) {
    std::cout << text;
    if (!out.empty()) write_text_atomic(out, text);
}

int cmd_sweep(const std::string& kind, const std::vector<std::string>& reports, const std::string& param,
              const std::vector<double>& multipliers, const std::vector<std::string>& bb_configs, std::uint64_t seed,
              int grid_size, const std::string& out) {
    if (kind == "weights" || kind == "optimistic") {
        const auto labelled = load_reports(reports);
        std::vector<CodeReport> rs;
        for (const auto& [label, r] : labelled) rs.push_back(r);
        std::vector<SweepVariant> variants;
        if (kind == "weights") {
            variants = sweep_isolation(rs);
        } else {
            const std::vector<SweepParameter> params =
                param.empty() ? std::vector<SweepParameter>{SweepParameter::tiers, SweepParameter::length,
                                                            SweepParameter::bumps, SweepParameter::tsvs}
                              : std::vector<SweepParameter>{parse_param(param)};
            for (auto p : params) {
                auto v = sweep_optimistic(rs, p, multipliers);
                variants.insert(variants.end(), v.begin(), v.end());
            }
        }
        std::string text = "label,family,n,k,d,C_hw_default";
        for (const auto& v : variants) text += "," + v.label;
        text += "\n";
        ComplexityModel base;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            CodeReport r = rs[i];
            rescore(r, base);
            text += labelled[i].first + "," + r.family + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
                    std::to_string(r.d) + "," + fixed(r.c_hw, 4);
            for (const auto& v : variants) text += "," + fixed(v.reports[i].c_hw, 4);
            text += "\n";
        }
        emit(text, out);
        return 0;
    }
    if (kind == "bb_aspect") {
        if (bb_configs.empty()) fail(ErrorKind::config, "bb_aspect needs at least one --bb-config");
        std::string text = "config,n,k,lattice_width,lattice_height,AR,C_hw_square_grid,C_hw_spring,ratio_spring_over_grid\n";
        for (const auto& path : bb_configs) {
            RunConfig cfg;
            cfg.code.family = "bb";
            cfg.code.bb = bb_spec_from_json(read_json(path));
            cfg.seed = seed;
            if (grid_size > 0) cfg.routing.grid_size = grid_size;
            ToricLayoutInfo info;
            const CssCode code = build_bb_code(cfg.code.bb, &info);
            if (!code.positions) fail(ErrorKind::config, path + ": no toric layout for this bb code");
            cfg.placement = PlacementMode::square_grid;
            const auto grid = run_pipeline(cfg, code);
            cfg.placement = PlacementMode::spring;
            const auto spring = run_pipeline(cfg, code);
            text += fs::path(path).stem().string() + "," + std::to_string(code.n) + "," + std::to_string(code.k) + "," +
                    std::to_string(info.width) + "," + std::to_string(info.height) + "," +
                    fixed(info.aspect_ratio(), 3) + "," + fixed(grid.report.c_hw, 4) + "," +
                    fixed(spring.report.c_hw, 4) + "," + fixed(spring.report.c_hw / grid.report.c_hw, 4) + "\n";
        }
        emit(text, out);
        return 0;
    }
    fail(ErrorKind::config, "unknown sweep kind '" + kind + "' (weights, optimistic, bb_aspect)");
}

// ---- distance --------------------------------------------------------------

int cmd_distance(const CodeFlags& flags, DistanceOptions opt) {
    CodeSource src;
    flags.apply(src);
    const CssCode code = build_code(src, 1);
    const auto est = estimate_distance(code, opt);
    std::cout << "[[" << code.n << "," << code.k << "," << est.value << "]] "
              << (est.kind == DistanceKind::exact ? "exact" : "upper_bound") << " trials=" << est.trials_used << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Place-and-route for CSS code connectivity graphs on multi-tier stackups"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "build a code and write its parity-check file");
    CodeFlags gen_flags;
    gen_flags.add(gen);
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--seed", gen_seed, "seed for tile check placement");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    auto* lay = app.add_subcommand("layout", "place, route and score one code");
    RunFlags lay_flags;
    lay_flags.add(lay);

    auto* ren = app.add_subcommand("render", "draw one SVG per tier of a layout file");
    std::string ren_in, ren_out;
    ren->add_option("layout", ren_in, "layout file")->required();
    ren->add_option("-o,--output-dir", ren_out, "directory for the SVG files");

    auto* rep = app.add_subcommand("report", "run a batch manifest and write summary tables");
    std::string rep_in, rep_out;
    int rep_parallel = 0;
    bool rep_layouts = false;
    rep->add_option("manifest", rep_in, "batch manifest file")->required();
    rep->add_option("--parallel", rep_parallel, "override the manifest parallelism limit");
    rep->add_option("--output-dir", rep_out, "output directory");
    rep->add_flag("--write-layouts", rep_layouts, "also write every routed layout");

    auto* swp = app.add_subcommand("sweep", "re-score reports under model variants, or compare BB placements");
    std::string swp_kind, swp_param, swp_out;
    std::vector<std::string> swp_reports, swp_bb;
    std::vector<double> swp_mult{0.5, 1.5};
    std::uint64_t swp_seed = 1;
    int swp_grid = 0;
    swp->add_option("kind", swp_kind, "weights, optimistic or bb_aspect")->required();
    swp->add_option("--reports", swp_reports, "report json files");
    swp->add_option("--param", swp_param, "parameter for the optimistic sweep (default: all four)");
    swp->add_option("--multipliers", swp_mult, "optimistic-value multipliers")->delimiter(',');
    swp->add_option("--bb-config", swp_bb, "bb config files for bb_aspect");
    swp->add_option("--seed", swp_seed);
    swp->add_option("--grid-size", swp_grid);
    swp->add_option("-o,--output", swp_out, "also write the table here");

    auto* dst = app.add_subcommand("distance", "estimate the code distance");
    CodeFlags dst_flags;
    dst_flags.add(dst);
    DistanceOptions dst_opt;
    dst->add_option("--trials", dst_opt.trials);
    dst->add_option("--threshold", dst_opt.exhaustive_threshold, "largest kernel dimension enumerated exhaustively");
    dst->add_option("--seed", dst_opt.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::config);
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_flags, gen_seed, gen_out);
        if (lay->parsed()) return cmd_layout(lay_flags.resolve());
        if (ren->parsed()) return cmd_render(ren_in, ren_out);
        if (rep->parsed()) return cmd_report(rep_in, rep_parallel, rep_out, rep_layouts);
        if (swp->parsed())
            return cmd_sweep(swp_kind, swp_reports, swp_param, swp_mult, swp_bb, swp_seed, swp_grid, swp_out);
        if (dst->parsed()) {
            if (dst_opt.trials < 1) fail(ErrorKind::config, "--trials must be at least 1");
            return cmd_distance(dst_flags, dst_opt);
        }
    } catch (const RoutingError& e) {
        std::cerr << "error (routing): " << e.what() << "\n";
        return exit_code(ErrorKind::routing);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
