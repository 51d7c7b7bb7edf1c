// luxfield command-line toolkit: decompose | timeseries | compare | render.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "luxfield/analysis.hpp"
#include "luxfield/export.hpp"
#include "luxfield/render.hpp"
#include "luxfield/timeutil.hpp"

namespace fs = std::filesystem;
using namespace luxfield;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
    std::string dialect = "canonical";
    std::string mapping_path;
    std::string out_dir = ".";
    std::string azimuth_convention = "compass";
};

AzimuthConvention azimuth_from_name(const std::string& s) {
    if (s == "compass") return AzimuthConvention::Compass;
    if (s == "math") return AzimuthConvention::Math;
    throw Error("unknown azimuth convention: " + s);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

struct LoadedMeasurement {
    fs::path path;
    CubicMeasurement measurement;
};

struct LoadReport {
    std::vector<LoadedMeasurement> ok;
    std::vector<std::pair<std::string, std::string>> errors;  // path, message
};

LoadReport load_measurements(std::vector<std::string> paths, const CommonOpts& opts) {
    std::sort(paths.begin(), paths.end());
    const Dialect dialect = dialect_from_name(opts.dialect);
    std::optional<DialectMapping> mapping;
    if (!opts.mapping_path.empty())
        mapping = mapping_from_json(read_file(opts.mapping_path), dialect);

    LoadReport report;
    for (const auto& p : paths) {
        try {
            CubicMeasurement m =
                parse_cubic_csv(read_file(p), dialect, mapping ? &*mapping : nullptr);
            report.ok.push_back({fs::path(p), std::move(m)});
        } catch (const Error& e) {
            report.errors.emplace_back(p, e.what());
        }
    }
    // deterministic processing order: timestamp, then path
    std::stable_sort(report.ok.begin(), report.ok.end(),
                     [](const LoadedMeasurement& a, const LoadedMeasurement& b) {
                         return a.measurement.timestamp < b.measurement.timestamp;
                     });
    return report;
}

void write_error_report(const LoadReport& report, const fs::path& out_dir) {
    if (report.errors.empty()) return;
    std::string csv = "file,error\n";
    for (const auto& [path, msg] : report.errors) {
        std::string clean = msg;
        std::replace(clean.begin(), clean.end(), ',', ';');
        csv += path + "," + clean + "\n";
    }
    write_file(out_dir / "errors.csv", csv);
    for (const auto& [path, msg] : report.errors)
        std::cerr << "error: " << path << ": " << msg << "\n";
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt9(*v) : std::string(); }

// ---------------------------------------------------------------- decompose

int cmd_decompose(const std::vector<std::string>& paths, const CommonOpts& opts,
                  const std::string& format) {
    const AzimuthConvention conv = azimuth_from_name(opts.azimuth_convention);
    LoadReport report = load_measurements(paths, opts);
    fs::create_directories(opts.out_dir);

    std::vector<PhotometricSummary> summaries;
    for (const auto& lm : report.ok) {
        try {
            summaries.push_back(summarize_measurement(lm.measurement, conv));
        } catch (const Error& e) {
            report.errors.emplace_back(lm.path.string(), e.what());
        }
    }

    const std::vector<std::pair<std::string, std::string>> provenance = {
        {"dialect", opts.dialect},
        {"azimuth_convention", opts.azimuth_convention},
        {"observer", observer_tables().version},
    };
    if (format == "csv" || format == "both")
        export_results(summaries, ExportFormat::Csv, fs::path(opts.out_dir) / "summaries.csv",
                       provenance);
    if (format == "json" || format == "both")
        export_results(summaries, ExportFormat::Json, fs::path(opts.out_dir) / "summaries.json",
                       provenance);
    write_error_report(report, opts.out_dir);
    std::cout << "decomposed " << summaries.size() << " measurement(s), " << report.errors.size()
              << " error(s)\n";
    return report.errors.empty() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------- timeseries

int cmd_timeseries(const std::vector<std::string>& paths, const CommonOpts& opts,
                   const std::vector<std::string>& window_specs, const std::string& avs_method,
                   bool sun_path) {
    const AzimuthConvention conv = azimuth_from_name(opts.azimuth_convention);
    const AvsMethod method = avs_method == "range" ? AvsMethod::Range : AvsMethod::Local;
    if (avs_method != "local" && avs_method != "range")
        throw CLI::ValidationError("--avs-method must be local or range");

    LoadReport report = load_measurements(paths, opts);
    if (report.ok.empty()) {
        write_error_report(report, opts.out_dir);
        std::cerr << "error: no parseable measurements\n";
        return kExitFatal;
    }
    std::vector<CubicMeasurement> ms;
    ms.reserve(report.ok.size());
    for (auto& lm : report.ok) ms.push_back(std::move(lm.measurement));
    Session session = assemble_session(std::move(ms), window_specs);
    fs::create_directories(opts.out_dir);

    std::vector<PhotometricSummary> summaries;
    summaries.reserve(session.measurements.size());
    for (const auto& m : session.measurements) summaries.push_back(summarize_measurement(m, conv));

    const std::vector<std::pair<std::string, std::string>> provenance = {
        {"dialect", opts.dialect},
        {"azimuth_convention", opts.azimuth_convention},
        {"avs_method", avs_method},
        {"observer", observer_tables().version},
    };
    export_results(summaries, ExportFormat::Csv, fs::path(opts.out_dir) / "series.csv",
                   provenance);

    // windows: named ones plus the whole session
    std::vector<Window> windows = session.windows;
    {
        Window all;
        all.name = "all";
        all.begin = session.first();
        all.end = session.last();
        all.interior = true;
        windows.push_back(all);
    }

    const auto series_of = [&](auto&& get) {
        Series s;
        for (const auto& sum : summaries) {
            const std::optional<double> v = get(sum);
            if (v) s.emplace_back(sum.timestamp, *v);
        }
        return s;
    };
    struct Quantity {
        std::string name;
        Series series;
    };
    const std::vector<Quantity> quantities = {
        {"vector_cct_k", series_of([](const PhotometricSummary& s) {
             return s.vector.color.cct ? std::optional<double>(s.vector.color.cct->kelvin)
                                       : std::nullopt;
         })},
        {"scalar_cct_k", series_of([](const PhotometricSummary& s) {
             return s.scalar.color.cct ? std::optional<double>(s.scalar.color.cct->kelvin)
                                       : std::nullopt;
         })},
        {"symmetric_cct_k", series_of([](const PhotometricSummary& s) {
             return s.symmetric.color.cct ? std::optional<double>(s.symmetric.color.cct->kelvin)
                                          : std::nullopt;
         })},
        {"vector_illuminance_lux",
         series_of([](const PhotometricSummary& s) { return s.vector.illuminance_lux; })},
        {"scalar_illuminance_lux",
         series_of([](const PhotometricSummary& s) { return s.scalar.illuminance_lux; })},
        {"symmetric_illuminance_lux",
         series_of([](const PhotometricSummary& s) { return s.symmetric.illuminance_lux; })},
    };

    std::string avs_csv;
    for (const auto& [k, v] : provenance) avs_csv += "#" + k + "=" + v + "\n";
    avs_csv += "window,quantity,method,average_speed,n\n";
    for (const Window& w : windows) {
        for (const auto& q : quantities) {
            try {
                const RateSummary r = average_speed(q.series, w, method, q.name);
                avs_csv += w.name + "," + q.name + "," + avs_method + "," +
                           fmt9(r.average_speed) + "," + std::to_string(r.n) + "\n";
            } catch (const InsufficientData&) {
                avs_csv += w.name + "," + q.name + "," + avs_method + ",,0\n";
            }
        }
    }
    write_file(fs::path(opts.out_dir) / "avs.csv", avs_csv);

    // diffuseness vs light-vector altitude correlation per window
    nlohmann::ordered_json stats;
    for (const auto& [k, v] : provenance) stats["config"][k] = v;
    stats["pearson"] = nlohmann::ordered_json::array();
    for (const Window& w : windows) {
        std::vector<double> alt, diff;
        for (const auto& s : summaries) {
            if (!w.contains(s.timestamp) || !s.direction || !s.diffuseness) continue;
            alt.push_back(s.direction->altitude_deg);
            diff.push_back(*s.diffuseness);
        }
        nlohmann::ordered_json entry;
        entry["window"] = w.name;
        entry["a"] = "vector_altitude_deg";
        entry["b"] = "diffuseness";
        try {
            const PearsonResult r = pearson(alt, diff);
            entry["r"] = r.r;
            entry["p"] = r.p;
            entry["n"] = r.n;
        } catch (const Error& e) {
            entry["error"] = e.what();
            entry["n"] = alt.size();
        }
        stats["pearson"].push_back(entry);
    }
    write_file(fs::path(opts.out_dir) / "stats.json", stats.dump(2) + "\n");

    if (sun_path) {
        std::string sp = "timestamp,sun_altitude_deg,sun_azimuth_deg,vector_altitude_deg,"
                         "vector_azimuth_deg\n";
        bool any = false;
        for (std::size_t i = 0; i < session.measurements.size(); ++i) {
            const auto& m = session.measurements[i];
            if (!m.location) continue;
            any = true;
            const SunPosition sun =
                solar_position(m.timestamp, m.location->lat_deg, m.location->lon_deg);
            const auto& dir = summaries[i].direction;
            sp += format_iso8601(m.timestamp) + "," + fmt9(sun.altitude_deg) + "," +
                  fmt9(sun.azimuth_deg) + ",";
            sp += dir ? fmt9(dir->altitude_deg) : std::string();
            sp += ",";
            sp += dir && dir->azimuth_deg ? fmt9(*dir->azimuth_deg) : std::string();
            sp += "\n";
        }
        if (any) write_file(fs::path(opts.out_dir) / "sunpath.csv", sp);
    }

    write_error_report(report, opts.out_dir);
    std::cout << "timeseries: " << summaries.size() << " measurement(s), "
              << session.windows.size() << " window(s), " << report.errors.size()
              << " parse error(s)\n";
    return report.errors.empty() ? kExitOk : kExitPartial;
}

// ------------------------------------------------------------------ compare

struct Aggregate {
    double mean = 0.0, sd = 0.0;
    int n = 0;
};

Aggregate aggregate(const std::vector<double>& v) {
    Aggregate a;
    a.n = static_cast<int>(v.size());
    if (v.empty()) return a;
    for (double x : v) a.mean += x;
    a.mean /= a.n;
    if (a.n > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - a.mean) * (x - a.mean);
        a.sd = std::sqrt(ss / (a.n - 1));
    }
    return a;
}

int cmd_compare(const std::string& manifest_path, const CommonOpts& opts,
                const std::string& cd_metric) {
    const CdMetric metric = cd_metric == "uv" ? CdMetric::UvEuclidean : CdMetric::XyEuclidean;
    if (cd_metric != "xy" && cd_metric != "uv")
        throw CLI::ValidationError("--cd-metric must be xy or uv");

    const fs::path manifest_dir = fs::path(manifest_path).parent_path();
    std::istringstream in(read_file(manifest_path));
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::array<std::string, 3>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("scene_id", 0) == 0) continue;
        std::istringstream ls(line);
        std::array<std::string, 3> cells;
        for (auto& c : cells)
            if (!std::getline(ls, c, ','))
                throw MalformedFile("manifest row needs scene_id,lit,shaded", lineno);
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) {
        std::cerr << "error: empty pairs manifest\n";
        return kExitUsage;
    }

    fs::create_directories(opts.out_dir);
    const Dialect dialect = dialect_from_name(opts.dialect);
    std::optional<DialectMapping> mapping;
    if (!opts.mapping_path.empty())
        mapping = mapping_from_json(read_file(opts.mapping_path), dialect);

    std::vector<std::pair<std::string, std::string>> errors;
    std::vector<ComparisonRecord> records;
    for (const auto& row : rows) {
        try {
            const int scene_id = std::stoi(row[0]);
            const auto lit = parse_cubic_csv(read_file(manifest_dir / row[1]), dialect,
                                             mapping ? &*mapping : nullptr);
            const auto shaded = parse_cubic_csv(read_file(manifest_dir / row[2]), dialect,
                                                mapping ? &*mapping : nullptr);
            records.push_back(
                compare_pair(make_measurement_pair(std::move(lit), std::move(shaded), scene_id),
                             metric));
        } catch (const std::exception& e) {
            errors.emplace_back(row[0] + ":" + row[1] + ":" + row[2], e.what());
        }
    }
    std::sort(records.begin(), records.end(),
              [](const ComparisonRecord& a, const ComparisonRecord& b) {
                  return a.scene_id < b.scene_id;
              });

    std::string csv = "#cd_metric=" + cd_metric + "\n";
    csv += "scene_id";
    for (const char* comp : {"symmetric", "scalar", "vector"})
        for (const char* f : {"cct_delta_k", "illuminance_ratio", "color_difference"})
            csv += std::string(",") + comp + "_" + f;
    csv += ",diffuseness_delta,altitude_delta_deg\n";
    for (const auto& r : records) {
        csv += std::to_string(r.scene_id);
        for (const auto* pc : {&r.symmetric, &r.scalar, &r.vector}) {
            csv += "," + opt_cell(pc->cct_delta_k);
            csv += "," + opt_cell(pc->illuminance_ratio);
            csv += "," + opt_cell(pc->color_difference);
        }
        csv += "," + opt_cell(r.diffuseness_delta) + "," + opt_cell(r.altitude_delta_deg) + "\n";
    }
    write_file(fs::path(opts.out_dir) / "comparisons.csv", csv);

    std::string agg = "#cd_metric=" + cd_metric + "\n";
    agg += "component,metric,mean,sd,n\n";
    const auto agg_row = [&](const std::string& comp, const std::string& metric_name,
                             auto&& getter) {
        std::vector<double> vals;
        for (const auto& r : records) {
            const std::optional<double> v = getter(r);
            if (v) vals.push_back(*v);
        }
        const Aggregate a = aggregate(vals);
        agg += comp + "," + metric_name + "," + (a.n ? fmt9(a.mean) : std::string()) + "," +
               (a.n ? fmt9(a.sd) : std::string()) + "," + std::to_string(a.n) + "\n";
    };
    const auto pc_of = [](const ComparisonRecord& r, const std::string& comp)
        -> const ComparisonRecord::PerComponent& {
        return comp == "symmetric" ? r.symmetric : comp == "scalar" ? r.scalar : r.vector;
    };
    for (const std::string comp : {"symmetric", "scalar", "vector"}) {
        agg_row(comp, "cct_delta_k",
                [&](const ComparisonRecord& r) { return pc_of(r, comp).cct_delta_k; });
        agg_row(comp, "illuminance_ratio",
                [&](const ComparisonRecord& r) { return pc_of(r, comp).illuminance_ratio; });
        agg_row(comp, "color_difference",
                [&](const ComparisonRecord& r) { return pc_of(r, comp).color_difference; });
    }
    agg_row("", "diffuseness_delta",
            [](const ComparisonRecord& r) { return r.diffuseness_delta; });
    agg_row("", "altitude_delta_deg",
            [](const ComparisonRecord& r) { return r.altitude_delta_deg; });
    write_file(fs::path(opts.out_dir) / "aggregate.csv", agg);

    if (!errors.empty()) {
        std::string ecsv = "pair,error\n";
        for (const auto& [k, msg] : errors) {
            std::string clean = msg;
            std::replace(clean.begin(), clean.end(), ',', ';');
            ecsv += k + "," + clean + "\n";
        }
        write_file(fs::path(opts.out_dir) / "errors.csv", ecsv);
        for (const auto& [k, msg] : errors) std::cerr << "error: " << k << ": " << msg << "\n";
    }
    std::cout << "compared " << records.size() << " pair(s), " << errors.size() << " error(s)\n";
    return errors.empty() ? kExitOk : kExitPartial;
}

// ------------------------------------------------------------------- render

int cmd_render(const std::string& path, const CommonOpts& opts, const std::string& kind,
               double bands_nm, int size, double exposure, double gamma,
               bool normalize_vector_up) {
    const Dialect dialect = dialect_from_name(opts.dialect);
    std::optional<DialectMapping> mapping;
    if (!opts.mapping_path.empty())
        mapping = mapping_from_json(read_file(opts.mapping_path), dialect);

    CubicMeasurement m = parse_cubic_csv(read_file(path), dialect, mapping ? &*mapping : nullptr);
    for (auto& f : m.faces) f = resample(f, canonical_grid());
    const LightFieldComponents c = decompose(m);

    ProbeRenderConfig cfg;
    cfg.size = size;
    if (exposure > 0.0) cfg.exposure = exposure;
    cfg.gamma = gamma;
    cfg.normalize_vector_up = normalize_vector_up;

    fs::create_directories(opts.out_dir);
    const std::string session = fs::path(path).stem().string();
    const std::string stamp = format_compact(m.timestamp);
    const auto out_name = [&](const std::string& k) {
        return fs::path(opts.out_dir) / (session + "_" + stamp + "_" + k + ".png");
    };

    const auto report = [](const std::string& name, const RenderedImage& img) {
        std::cout << name << ": " << img.width << "x" << img.height << ", exposure "
                  << img.exposure_used << ", clipped channels " << img.clipped_channels << "\n";
    };

    if (kind == "probe") {
        const RenderedImage img = render_probe(c, cfg);
        write_png(img, out_name("probe"));
        report(out_name("probe").string(), img);
    } else if (kind == "map") {
        const RenderedImage img = render_square_map(c, size, cfg);
        write_png(img, out_name("map"));
        report(out_name("map").string(), img);
    } else if (kind == "spectral") {
        const SpectralRenderResult r = render_spectral_superposition(c, bands_nm, cfg);
        for (const auto& [label, img] : r.bands) {
            write_png(img, out_name("spectral_" + label));
            report(out_name("spectral_" + label).string(), img);
        }
        write_png(r.superposed, out_name("spectral_superposed"));
        report(out_name("spectral_superposed").string(), r.superposed);
        write_png(r.luminance_only, out_name("spectral_luminance"));
        report(out_name("spectral_luminance").string(), r.luminance_only);
    } else {
        throw CLI::ValidationError("--kind must be probe, map or spectral");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral cubic illumination toolkit: first-order light-field decomposition, "
                 "photometric summaries, time-series statistics and probe renders"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> inputs;
    std::string format = "both";
    std::vector<std::string> window_specs;
    std::string avs_method = "local";
    bool sun_path = false;
    std::string manifest;
    std::string cd_metric = "xy";
    std::string kind = "probe";
    double bands_nm = 20.0;
    int size = 256;
    double exposure = 0.0;  // 0 = auto
    double gamma = 2.2;
    bool normalize_vector_up = false;

    const auto add_common = [&](CLI::App* cmd, bool with_inputs = true) {
        if (with_inputs)
            cmd->add_option("inputs", inputs, "measurement CSV files")->required();
        cmd->add_option("--dialect", opts.dialect, "canonical | sekonic | konica");
        cmd->add_option("--mapping", opts.mapping_path, "sidecar JSON mapping file");
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--azimuth-convention", opts.azimuth_convention, "compass | math");
    };

    CLI::App* dec = app.add_subcommand("decompose", "per-file light-field summaries");
    add_common(dec);
    dec->add_option("--format", format, "csv | json | both");

    CLI::App* ts = app.add_subcommand("timeseries", "session series, AVs and correlations");
    add_common(ts);
    ts->add_option("--window", window_specs,
                   "named window, name=HH:MM-HH:MM (UTC) or name=<iso>/<iso>; repeatable");
    ts->add_option("--avs-method", avs_method, "local | range");
    ts->add_flag("--sun-path", sun_path, "emit sunpath.csv from measurement locations");

    CLI::App* cmp = app.add_subcommand("compare", "shade/light pair comparison");
    cmp->add_option("manifest", manifest, "CSV manifest: scene_id,lit,shaded")->required();
    add_common(cmp, false);
    cmp->add_option("--cd-metric", cd_metric, "xy | uv");

    CLI::App* ren = app.add_subcommand("render", "probe / map / spectral PNG renders");
    ren->add_option("input", manifest, "measurement CSV file")->required();
    add_common(ren, false);
    ren->add_option("--kind", kind, "probe | map | spectral");
    ren->add_option("--bands-nm", bands_nm, "spectral band width in nm");
    ren->add_option("--size", size, "image size in pixels");
    ren->add_option("--exposure", exposure, "fixed exposure; 0 = auto (p99 -> 1.0)");
    ren->add_option("--gamma", gamma, "display gamma");
    ren->add_flag("--normalize-vector-up", normalize_vector_up,
                  "re-orient the light vector to +z before shading");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (dec->parsed()) return cmd_decompose(inputs, opts, format);
        if (ts->parsed())
            return cmd_timeseries(inputs, opts, window_specs, avs_method, sun_path);
        if (cmp->parsed()) return cmd_compare(manifest, opts, cd_metric);
        if (ren->parsed())
            return cmd_render(manifest, opts, kind, bands_nm, size, exposure, gamma,
                              normalize_vector_up);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitFatal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitUsage;
}
