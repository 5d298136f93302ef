#include "goldilocks/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "goldilocks/corpus.hpp"

namespace gold {

namespace fs = std::filesystem;

namespace {

const char* kToolName = "goldilocks";

std::string tool_version() {
#ifdef GOLDILOCKS_VERSION
    return GOLDILOCKS_VERSION;
#else
    return "unknown";
#endif
}

CPoint point_param(const Json& params, const char* key, std::size_t dim) {
    if (!params.contains(key)) throw SchemaError(std::string("params.") + key + " is required");
    CPoint p = cvec_from_json(params.at(key));
    if (p.dim() != dim) throw SchemaError(std::string("params.") + key + " has the wrong dimension");
    return p;
}

std::vector<CPoint> default_bases(std::size_t dim) {
    const std::vector<Complex> first{0.0, {0.0, 0.5}, -0.7, {0.3, 0.3}, {0.0, -0.2}};
    std::vector<CPoint> out;
    for (Complex c : first) {
        CPoint p(dim);
        p[0] = c;
        out.push_back(p);
    }
    return out;
}

class Timer {
public:
    explicit Timer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
    template <class F>
    auto operator()(const std::string& name, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            sink_.emplace_back(name, seconds_since(t0));
        } else {
            auto r = f();
            sink_.emplace_back(name, seconds_since(t0));
            return r;
        }
    }

private:
    static double seconds_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    std::vector<std::pair<std::string, double>>& sink_;
};

class Outputs {
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}
    void write(const std::string& name, const std::string& content) {
        write_atomic(dir_ / name, content);
        files_.push_back({name, static_cast<std::uintmax_t>(content.size())});
    }
    void json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }
    template <class F>
    void csv(const std::string& name, F&& writer) {
        std::ostringstream os;
        writer(os);
        write(name, os.str());
    }
    const std::vector<OutputFile>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<OutputFile> files_;
};

ApproachSequence make_sequence(const DomainSpec& domain, const Json& params, const char* target_key, const char* mode_key,
                               const std::vector<double>& deltas) {
    CPoint target = point_param(params, target_key, domain.dim());
    std::string mode = params.value(mode_key, std::string("radial"));
    if (mode == "radial") return ApproachSequence::radial(domain, target, deltas);
    if (mode == "tangential") return ApproachSequence::tangential(domain, target, deltas);
    throw SchemaError(std::string("params.") + mode_key + " must be radial or tangential");
}

std::vector<double> approach_deltas(const ExperimentConfig& c) {
    if (c.params.contains("deltas")) {
        auto d = c.params.at("deltas").get<std::vector<double>>();
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!(d[i] > 0.0) || (i > 0 && !(d[i] < d[i - 1]))) throw SchemaError("params.deltas must be positive and decreasing");
        return d;
    }
    auto g = geometric_grid(c.tolerance("delta_min", 1e-3), c.tolerance("delta_max", 0.3), c.resolution("trials", 12));
    std::reverse(g.begin(), g.end());
    return g;
}

Json run_metric_table(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    Rng rng(c.seed);
    std::vector<CPoint> points;
    if (c.params.contains("points")) {
        for (const auto& p : c.params.at("points")) points.push_back(cvec_from_json(p));
    } else {
        points = sample_interior(domain, c.resolution("samples", 100), rng);
    }
    std::vector<CVector> dirs;
    for (std::size_t i = 0; i < points.size(); ++i) dirs.push_back(CVec::from_real(numeric::random_unit(rng, 2 * domain.dim())));
    std::vector<MetricEstimate> est(points.size());
    timer("infinitesimal_metric", [&] {
        numeric::parallel_for(points.size(), c.threads,
                              [&](std::size_t i) { est[i] = infinitesimal_metric(domain, points[i], dirs[i]); });
    });
    double worst_ratio = 1.0;
    std::size_t exact = 0;
    out.csv("metric_table.csv", [&](std::ostream& os) {
        os << "i";
        for (std::size_t j = 0; j < domain.dim(); ++j) os << ",re_z" << j + 1 << ",im_z" << j + 1;
        for (std::size_t j = 0; j < domain.dim(); ++j) os << ",re_v" << j + 1 << ",im_v" << j + 1;
        os << ",delta,lower,upper,lower_rule,upper_rule\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            os << i;
            for (std::size_t j = 0; j < domain.dim(); ++j)
                os << ',' << numeric::format_double(points[i][j].real()) << ',' << numeric::format_double(points[i][j].imag());
            for (std::size_t j = 0; j < domain.dim(); ++j)
                os << ',' << numeric::format_double(dirs[i][j].real()) << ',' << numeric::format_double(dirs[i][j].imag());
            os << ',' << numeric::format_double(boundary_distance(domain, points[i])) << ','
               << numeric::format_double(est[i].lower) << ',' << numeric::format_double(est[i].upper) << ','
               << to_string(est[i].lower_rule) << ',' << to_string(est[i].upper_rule) << '\n';
            worst_ratio = std::max(worst_ratio, est[i].upper / est[i].lower);
            exact += est[i].exact() ? 1 : 0;
        }
    });
    return {{"samples", points.size()}, {"exact", exact}, {"max_upper_over_lower", worst_ratio}};
}

Json run_geodesic(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    CPoint x = point_param(c.params, "x", domain.dim());
    CPoint y = point_param(c.params, "y", domain.dim());
    GeodesicConfig g;
    g.initial_resolution = c.resolution("initial_resolution", 16);
    g.doublings = static_cast<int>(c.resolution("doublings", 1));
    g.rel_tol = c.tolerance("rel_tol", 1e-4);
    g.seed = c.seed;
    const double lambda = c.params.value("lambda", 1.0);
    SampledPath raw = timer("minimize_path", [&] { return minimize_path(domain, x, y, g); });
    SampledPath path = timer("unit_speed_reparametrize",
                             [&] { return unit_speed_reparametrize(domain, raw, c.resolution("path_samples", 128)); });
    auto cert = timer("certify", [&] { return certify(domain, path, lambda); });
    MetricEstimate dist = timer("distance", [&] { return distance(domain, x, y); });
    out.csv("path.csv", [&](std::ostream& os) { write_path_csv(os, domain, path); });
    return {{"x", to_json(x)},
            {"y", to_json(y)},
            {"distance", to_json(dist)},
            {"path_length_upper", path.params.back()},
            {"certificate", to_json(cert)}};
}

Json run_goldilocks(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    GoldilocksConfig g;
    g.r_grid = geometric_grid(c.tolerance("r_min", 1e-3), c.tolerance("r_max", 0.5), c.resolution("grid_levels", 16));
    g.sampler.directions = c.resolution("shell_directions", 24);
    g.sampler.seed = c.seed;
    g.sampler.threads = c.threads;
    g.condition2.seed = c.seed + 1;
    g.condition2.threads = c.threads;
    g.condition2.delta_min = c.tolerance("delta_min", 1e-4);
    GoldilocksReport rep = timer("goldilocks_report", [&] { return goldilocks_report(domain, g); });
    out.csv("shell_table.csv", [&](std::ostream& os) { write_shell_csv(os, rep.shell_table); });
    out.csv("condition2.csv", [&](std::ostream& os) { write_condition2_csv(os, rep.condition2); });
    Json j = to_json(rep);
    if (domain.lower_bound_model()) j["assumptions"] = "metric lower bound from the configured finite-type model";
    return j;
}

Json run_visibility(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    auto deltas = approach_deltas(c);
    ApproachSequence sx = make_sequence(domain, c.params, "xi", "mode_xi", deltas);
    ApproachSequence se = make_sequence(domain, c.params, "eta", "mode_eta", deltas);
    CPoint o = c.params.contains("o") ? point_param(c.params, "o", domain.dim()) : domain.interior_witness();
    VisibilityConfig v;
    v.lambda = c.params.value("lambda", 1.0);
    v.kappa = c.params.value("kappa", 0.5);
    v.path_samples = c.resolution("path_samples", 64);
    v.geodesic.seed = c.seed;
    v.sampler.seed = c.seed;
    v.threads = c.threads;
    VisibilityReport rep = timer("visibility_experiment", [&] { return visibility_experiment(domain, sx, se, o, v); });
    out.csv("visibility.csv", [&](std::ostream& os) { write_visibility_csv(os, rep); });
    for (const auto& t : rep.trials)
        if (t.ok) out.csv("path_" + std::to_string(t.index) + ".csv", [&](std::ostream& os) { write_path_csv(os, domain, t.path); });
    Json j = to_json(rep);
    j["control"] = euclidean_distance(sx.target, se.target) == 0.0;
    return j;
}

Json run_gromov(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    auto deltas = approach_deltas(c);
    ApproachSequence sx = make_sequence(domain, c.params, "xi", "mode_xi", deltas);
    ApproachSequence se = make_sequence(domain, c.params, "eta", "mode_eta", deltas);
    CPoint o = c.params.contains("o") ? point_param(c.params, "o", domain.dim()) : domain.interior_witness();
    GromovReport rep = timer("gromov_boundedness_experiment", [&] { return gromov_boundedness_experiment(domain, sx, se, o); });
    out.csv("gromov.csv", [&](std::ostream& os) { write_gromov_csv(os, rep); });
    return to_json(rep);
}

Json run_dynamics(const ExperimentConfig& c, const DomainSpec& domain, Outputs& out, Timer& timer) {
    SelfMap map;
    if (c.params.contains("map"))
        map = self_map_from_json(c.params.at("map"));
    else if (c.params.contains("map_corpus"))
        map = corpus_map(c.params.at("map_corpus").get<std::string>()).map;
    else
        throw SchemaError("params.map or params.map_corpus is required");
    std::vector<CPoint> bases;
    if (c.params.contains("bases"))
        for (const auto& b : c.params.at("bases")) bases.push_back(cvec_from_json(b));
    else
        bases = default_bases(domain.dim());
    const std::size_t N = c.resolution("orbit_length", 100);
    ValidationConfig vc;
    vc.seed = c.seed;
    SelfMap valid = timer("validate_map", [&] { return validate_map(domain, map, vc); });

    OrbitThresholds th;
    th.recurrence_eps = c.tolerance("recurrence_eps", th.recurrence_eps);
    th.diameter_factor = c.tolerance("diameter_factor", th.diameter_factor);
    MultiStartReport rep;
    if (bases.size() >= 5) {
        rep = timer("multi_start_consistency", [&] {
            return multi_start_consistency(domain, valid, bases, N, th, c.tolerance("xi_tolerance", 1e-3), c.threads);
        });
    } else {
        timer("iterate", [&] {
            for (const auto& b : bases) {
                rep.traces.push_back(iterate(domain, valid, b, N));
                rep.verdicts.push_back(classify(domain, rep.traces.back(), th));
            }
        });
        rep.consistent = true;
        for (const auto& v : rep.verdicts) rep.consistent = rep.consistent && v.kind == rep.verdicts.front().kind;
        rep.diagnostics = "fewer than 5 base points: no multi-start consistency claim";
    }
    for (std::size_t i = 0; i < rep.traces.size(); ++i)
        out.csv("trace_" + std::to_string(i) + ".csv", [&](std::ostream& os) { write_trace_csv(os, rep.traces[i]); });
    Json j = to_json(rep);
    j["map"] = to_json(valid);
    j["verdict"] = rep.consistent && !rep.verdicts.empty() ? to_string(rep.verdicts.front().kind) : "inconsistent";
    j["note"] = "maps are validated statistically on a sample grid; the validated flag is not a proof";
    return j;
}

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::MetricTable: return "metric-table";
        case ExperimentKind::Geodesic: return "geodesic";
        case ExperimentKind::Goldilocks: return "goldilocks";
        case ExperimentKind::Visibility: return "visibility";
        case ExperimentKind::Gromov: return "gromov";
        case ExperimentKind::Dynamics: return "dynamics";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    for (auto k : {ExperimentKind::MetricTable, ExperimentKind::Geodesic, ExperimentKind::Goldilocks,
                   ExperimentKind::Visibility, ExperimentKind::Gromov, ExperimentKind::Dynamics})
        if (to_string(k) == s) return k;
    throw SchemaError("unknown experiment kind: " + s);
}

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

std::size_t ExperimentConfig::resolution(const std::string& key, std::size_t fallback) const {
    auto it = resolutions.find(key);
    return it == resolutions.end() ? fallback : it->second;
}

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw SchemaError("config must be a JSON object");
    static const std::vector<std::string> known{"schema_version", "experiment", "domain",     "tolerances", "resolutions",
                                                "seed",           "output_dir", "threads",    "params"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw SchemaError("unknown config field '" + key + "'");

    ExperimentConfig c;
    c.raw = j;
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw SchemaError("schema_version (integer) is required");
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != kSchemaVersion)
        throw SchemaError("unsupported schema_version " + std::to_string(c.schema_version));

    if (!j.contains("experiment") || !j.at("experiment").is_string()) throw SchemaError("experiment (string) is required");
    c.kind = experiment_kind_from_string(j.at("experiment").get<std::string>());

    if (!j.contains("domain") || !j.at("domain").is_object()) throw SchemaError("domain (object) is required");
    c.domain = j.at("domain");

    if (j.contains("tolerances")) {
        if (!j.at("tolerances").is_object()) throw SchemaError("tolerances must be an object");
        for (const auto& [key, value] : j.at("tolerances").items()) {
            if (!value.is_number() || !(value.get<double>() > 0.0) || !std::isfinite(value.get<double>()))
                throw SchemaError("tolerances." + key + " must be a positive number");
            c.tolerances[key] = value.get<double>();
        }
    }
    if (j.contains("resolutions")) {
        if (!j.at("resolutions").is_object()) throw SchemaError("resolutions must be an object");
        for (const auto& [key, value] : j.at("resolutions").items()) {
            if (!value.is_number_integer() || value.get<long long>() <= 0)
                throw SchemaError("resolutions." + key + " must be a positive integer");
            c.resolutions[key] = value.get<std::size_t>();
        }
    }
    auto cap = [&](const char* key, std::size_t limit) {
        if (c.resolution(key, 0) > limit)
            throw SchemaError(std::string("resolutions.") + key + " exceeds the hard cap " + std::to_string(limit));
    };
    cap("path_samples", ResolutionCaps::path_samples);
    cap("initial_resolution", ResolutionCaps::path_samples);
    cap("trials", ResolutionCaps::trials);
    cap("orbit_length", ResolutionCaps::orbit_length);
    cap("grid_levels", ResolutionCaps::grid_levels);
    cap("shell_directions", ResolutionCaps::grid_levels);
    cap("samples", ResolutionCaps::table_samples);
    cap("doublings", 8);

    auto non_negative = [](const Json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); };
    if (!j.contains("seed") || !non_negative(j.at("seed"))) throw SchemaError("seed (non-negative integer) is required");
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) throw SchemaError("output_dir must be a string");
        c.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("threads")) {
        if (!non_negative(j.at("threads")) || j.at("threads").get<unsigned>() == 0)
            throw SchemaError("threads must be a positive integer");
        c.threads = j.at("threads").get<unsigned>();
    }
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw SchemaError("params must be an object");
        c.params = j.at("params");
    }
    config_domain(c);  // resolve early so schema problems surface before any work
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read config file " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

DomainSpec config_domain(const ExperimentConfig& config) {
    if (config.domain.contains("corpus")) {
        try {
            return corpus_domain(config.domain.at("corpus").get<std::string>()).domain;
        } catch (const InvalidArgument& e) {
            throw SchemaError(e.what());
        }
    }
    return domain_from_json(config.domain);
}

Json RunManifest::to_json() const {
    Json t = Json::array();
    for (const auto& [name, sec] : timings) t.push_back({{"operation", name}, {"seconds", sec}});
    Json files = Json::array();
    for (const auto& f : outputs) files.push_back({{"file", f.name}, {"bytes", f.bytes}});
    return {{"tool", kToolName},
            {"tool_version", tool_version},
            {"config", config},
            {"seed", seed},
            {"threads", threads},
            {"threads_source", threads_source},
            {"wall_clock_seconds", wall_clock_seconds},
            {"timings", t},
            {"outputs", files}};
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw Error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
}

Json error_json(const std::exception& e) {
    std::string kind = "error";
    if (dynamic_cast<const SchemaError*>(&e)) kind = "schema";
    else if (dynamic_cast<const Unsupported*>(&e)) kind = "unsupported";
    else if (dynamic_cast<const OutsideDomain*>(&e)) kind = "outside-domain";
    else if (dynamic_cast<const DimensionMismatch*>(&e)) kind = "dimension-mismatch";
    else if (dynamic_cast<const InvalidArgument*>(&e)) kind = "invalid-argument";
    return {{"status", "error"}, {"kind", kind}, {"message", e.what()}};
}

RunManifest run(ExperimentConfig config, const RunOverrides& overrides) {
    const auto t0 = std::chrono::steady_clock::now();
    RunManifest m;
    m.threads_source = config.raw.contains("threads") ? "config" : "default";
    if (const char* env = std::getenv("GOLDILOCKS_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            config.threads = static_cast<unsigned>(v);
            m.threads_source = "env:GOLDILOCKS_THREADS";
        }
    }
    if (overrides.threads) {
        config.threads = *overrides.threads;
        m.threads_source = "flag";
    }
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.output_dir) config.output_dir = *overrides.output_dir;

    Json snapshot = config.raw;
    snapshot["seed"] = config.seed;
    snapshot["output_dir"] = config.output_dir;
    snapshot["threads"] = config.threads;
    m.config = snapshot;
    m.seed = config.seed;
    m.threads = config.threads;
    m.tool_version = tool_version();

    const DomainSpec domain = config_domain(config);
    fs::create_directories(config.output_dir);
    Outputs out(config.output_dir);
    Timer timer(m.timings);

    Json report;
    switch (config.kind) {
        case ExperimentKind::MetricTable: report = run_metric_table(config, domain, out, timer); break;
        case ExperimentKind::Geodesic: report = run_geodesic(config, domain, out, timer); break;
        case ExperimentKind::Goldilocks: report = run_goldilocks(config, domain, out, timer); break;
        case ExperimentKind::Visibility: report = run_visibility(config, domain, out, timer); break;
        case ExperimentKind::Gromov: report = run_gromov(config, domain, out, timer); break;
        case ExperimentKind::Dynamics: report = run_dynamics(config, domain, out, timer); break;
    }
    Json full = {{"experiment", to_string(config.kind)}, {"domain", to_json(domain)}, {"seed", config.seed}};
    full.update(report);
    out.json("report.json", full);

    m.outputs = out.files();
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_atomic(fs::path(config.output_dir) / "manifest.json", m.to_json().dump(2) + "\n");
    return m;
}

Json corpus_json() {
    Json domains = Json::array();
    for (const auto& d : corpus_domains())
        domains.push_back({{"name", d.name},
                           {"spec", to_json(d.domain)},
                           {"tags", {{"convex", d.convex}, {"goldilocks_expected", d.goldilocks_expected}, {"taut_documented", d.taut_documented}}},
                           {"hypotheses", d.hypotheses}});
    Json maps = Json::array();
    for (const auto& m : corpus_maps())
        maps.push_back({{"name", m.name}, {"domain", m.domain}, {"map", to_json(m.map)}, {"expected", m.expected}});
    return {{"domains", domains}, {"maps", maps}};
}

std::string corpus_listing() {
    std::ostringstream os;
    os << "domains:\n";
    for (const auto& d : corpus_domains()) {
        os << "  " << d.name << "  [" << to_string(d.domain.kind()) << ", dim " << d.domain.dim() << "]"
           << "  convex=" << (d.convex ? "yes" : "no") << " goldilocks-expected=" << (d.goldilocks_expected ? "yes" : "no")
           << " taut-documented=" << (d.taut_documented ? "yes" : "no") << "\n      " << d.hypotheses << "\n";
    }
    os << "maps:\n";
    for (const auto& m : corpus_maps()) os << "  " << m.name << "  on " << m.domain << "  expected: " << m.expected << "\n";
    return os.str();
}

}  // namespace gold
