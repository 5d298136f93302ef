// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "goldilocks/runner.hpp"
#include "support.hpp"

using namespace gold;
using namespace testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double x, int prec = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

// Independent closed forms.
double disk_metric_oracle(Complex z, Complex v) { return std::abs(v) / (1.0 - std::norm(z)); }
double disk_distance_oracle(Complex a, Complex b) { return std::atanh(std::abs((a - b) / (1.0 - std::conj(b) * a))); }

Outcome disk_exactness() {
    Rng rng(101);
    double worst_metric = 0.0, worst_dist = 0.0;
    auto disk = DomainSpec::unit_disk();
    for (int i = 0; i < 1000; ++i) {
        Complex z = disk_point(rng, 0.999), w = disk_point(rng, 0.999);
        Complex v = std::polar(std::pow(10.0, uniform(rng, -2, 2)), uniform(rng, 0, 6.3));
        double k = infinitesimal_metric(disk, CVec{z}, CVec{v}).lower;
        worst_metric = std::max(worst_metric, std::abs(k / disk_metric_oracle(z, v) - 1.0));
        auto d = distance(disk, CVec{z}, CVec{w});
        worst_dist = std::max(worst_dist, std::abs(d.upper - disk_distance_oracle(z, w)));
    }
    return {worst_metric <= 1e-12 && worst_dist <= 1e-9,
            "max rel metric error " + fmt(worst_metric) + " (tol 1e-12), max distance error " + fmt(worst_dist) + " (tol 1e-9)"};
}

Outcome graham_sandwich() {
    Rng rng(102);
    auto convex = ball_as_convex(2);
    int outside = 0;
    double worst_ratio = 0.0;
    for (int i = 0; i < 1000; ++i) {
        CPoint z = ball_point(rng, 2, 0.99);
        CVector v = any_vector(rng, 2);
        auto k = infinitesimal_metric(convex, z, v);
        double exact = model::ball_metric(z, v);
        if (exact < k.lower * (1.0 - 1e-12) || exact > k.upper * (1.0 + 1e-12)) ++outside;
        worst_ratio = std::max(worst_ratio, k.upper / k.lower);
    }
    return {outside == 0 && worst_ratio <= 2.0 + 1e-6,
            std::to_string(outside) + " of 1000 outside; max upper/lower " + fmt(worst_ratio, 8) + " (tol 2 + 1e-6)"};
}

Outcome shell_closed_forms() {
    double worst_disk = 0.0, worst_ball = 0.0;
    for (double r : {0.05, 0.1, 0.25}) {
        auto d = estimate_M(DomainSpec::unit_disk(), r);
        auto b = estimate_M(DomainSpec::unit_ball(2), r);
        worst_disk = std::max(worst_disk, std::abs(d.upper - (2 * r - r * r)));
        worst_ball = std::max(worst_ball, std::abs(b.upper - std::sqrt(2 * r - r * r)));
    }
    return {worst_disk <= 1e-3 && worst_ball <= 5e-3,
            "disk max error " + fmt(worst_disk) + " (tol 1e-3), ball max error " + fmt(worst_ball) + " (tol 5e-3)"};
}

Outcome condition1_quadrature() {
    auto c = condition1_test(DomainSpec::unit_disk(), geometric_grid(1e-3, 0.5, 16));
    bool ok = c.verdict == Verdict::Converges && std::abs(c.integral - 0.875) <= 2e-2;
    std::string psi;
    for (double s : {0.25, 0.5, 0.75, 1.0, 1.5, 3.0}) {
        auto t = psi_threshold_test(s);
        bool want = s < 1.0;
        ok = ok && (t.verdict == Verdict::Converges) == want;
        psi += " s=" + fmt(s) + ":" + to_string(t.verdict);
    }
    return {ok, "disk integral " + fmt(c.integral, 6) + " (0.875 +- 2e-2) " + to_string(c.verdict) + ";" + psi};
}

Outcome condition2() {
    auto f = condition2_fit(DomainSpec::unit_disk(), CVec{0.0});
    bool ok = f.alpha >= 0.45 && f.alpha <= 0.55 && f.C <= 0.4 && f.max_positive_residual == 0.0;
    return {ok, "alpha " + fmt(f.alpha, 4) + " in [0.45, 0.55], C " + fmt(f.C, 4) + " <= 0.4, max positive residual " +
                    fmt(f.max_positive_residual)};
}

Outcome geodesic_accuracy() {
    Rng rng(106);
    auto disk = DomainSpec::unit_disk();
    double worst_rel = 0.0, worst_kappa = 0.0;
    bool raised = false;
    for (int i = 0; i < 20; ++i) {
        Complex a = disk_point(rng, 0.95), b = disk_point(rng, 0.95);
        auto p = minimize_path(disk, CVec{a}, CVec{b});
        double exact = disk_distance_oracle(a, b);
        worst_rel = std::max(worst_rel, std::abs(path_length(disk, p, Side::Upper) / exact - 1.0));
        auto cert = certify(disk, unit_speed_reparametrize(disk, p, 128), 1.0);
        raised = raised || cert.lambda_raised;
        worst_kappa = std::max(worst_kappa, cert.kappa);
    }
    return {worst_rel <= 0.01 && worst_kappa <= 0.05 && !raised,
            "max relative length error " + fmt(worst_rel) + " (tol 1e-2), max kappa " + fmt(worst_kappa) + " (tol 0.05)" +
                (raised ? ", lambda raised" : "")};
}

struct Quasi {
    std::string name;
    const DomainSpec* domain;
    SampledPath path;
    double lambda, kappa;
};

// Unit-speed geodesic from `base` through the sampled parameter set; `warp` maps path time to geodesic time.
SampledPath sampled(const std::function<CPoint(double)>& geodesic, double t_end, std::size_t n,
                    const std::function<double(double)>& warp) {
    SampledPath p;
    for (std::size_t k = 0; k <= n; ++k) {
        double t = t_end * static_cast<double>(k) / static_cast<double>(n);
        p.params.push_back(t);
        p.points.push_back(geodesic(warp(t)));
    }
    return p;
}

Outcome smoothing() {
    static const DomainSpec disk = DomainSpec::unit_disk(), ball = DomainSpec::unit_ball(2),
                            poly = DomainSpec::polydisk({1.0, 1.0});
    auto same = [](double t) { return t; };
    auto slow = [](double t) { return 0.5 * t; };
    auto stair = [](double t) { return std::floor(t); };
    auto disk_ray = [](Complex u) { return [u](double t) -> CPoint { return CVec{std::tanh(t) * u}; }; };
    auto ball_ray = [](CVec u) { return [u](double t) -> CPoint { return u * std::tanh(t); }; };
    const CVec u2{0.6, Complex{0.0, 0.8}};
    // Moebius image of the real diameter: a geodesic that misses the origin.
    auto moved = [](double t) -> CPoint {
        Complex a{0.0, 0.5}, z = std::tanh(t - 1.5);
        return CVec{(z + a) / (1.0 + std::conj(a) * z)};
    };
    std::vector<Quasi> q;
    q.push_back({"disk ray", &disk, sampled(disk_ray(1.0), 2.5, 20, same), 1.0, 0.0});
    q.push_back({"rotated disk ray", &disk, sampled(disk_ray(std::polar(1.0, 2.0)), 2.5, 20, same), 1.0, 0.0});
    q.push_back({"ball ray", &ball, sampled(ball_ray(u2), 2.5, 20, same), 1.0, 0.0});
    q.push_back({"slow disk ray", &disk, sampled(disk_ray(1.0), 5.0, 20, slow), 2.0, 0.0});
    q.push_back({"slow ball ray", &ball, sampled(ball_ray(u2), 5.0, 20, slow), 2.0, 0.0});
    q.push_back({"disk staircase", &disk, sampled(disk_ray(Complex{0.0, 1.0}), 3.0, 24, stair), 1.0, 1.0});
    q.push_back({"ball staircase", &ball, sampled(ball_ray(CVec{1.0, 0.0}), 3.0, 24, stair), 1.0, 1.0});
    q.push_back({"off-centre disk geodesic", &disk, sampled(moved, 3.0, 24, same), 1.0, 0.0});
    q.push_back({"polydisk diagonal", &poly, sampled([](double t) -> CPoint { return CVec{std::tanh(t), std::tanh(t)}; }, 2.0, 16, same),
                 1.0, 0.0});
    SampledPath jump;
    jump.params = {0.0, 0.5, 1.0, 1.5, 2.0};
    jump.points = {CVec{0.0}, CVec{0.0}, CVec{0.5}, CVec{0.5}, CVec{0.5}};
    q.push_back({"jump path", &disk, jump, 1.0, 1.5});

    std::string failures;
    double worst_h = 0.0;
    for (const auto& item : q) {
        try {
            auto res = quasi_to_almost(*item.domain, item.path, item.lambda, item.kappa);
            const double R = 2 * item.lambda + 2 * item.kappa + 2;
            const double k0 = 4 * item.lambda + 5 * item.kappa + 4;
            auto cert = certify(*item.domain, res.path, res.lambda0);
            bool ok = res.lambda0 <= R && res.kappa0 <= k0 && cert.lambda <= R && cert.kappa <= k0 &&
                      res.hausdorff_measured <= R;
            worst_h = std::max(worst_h, res.hausdorff_measured / R);
            if (!ok)
                failures += " " + item.name + "(lambda " + fmt(cert.lambda) + ", kappa " + fmt(cert.kappa) + ", H " +
                            fmt(res.hausdorff_measured) + ")";
        } catch (const std::exception& e) {
            failures += " " + item.name + "(" + e.what() + ")";
        }
    }
    return {failures.empty(), std::to_string(q.size()) + " quasi-geodesics; max Hausdorff/R " + fmt(worst_h) +
                                  (failures.empty() ? "" : "; failed:" + failures)};
}

Outcome visibility() {
    auto disk = DomainSpec::unit_disk();
    std::vector<double> deltas{0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 0.0005};
    auto rep = visibility_experiment(disk, ApproachSequence::radial(disk, CVec{1.0}, deltas),
                                     ApproachSequence::radial(disk, CVec{Complex{0.0, 1.0}}, deltas), CVec{0.0});
    const double oracle = std::atanh(std::sqrt(2.0) - 1.0);
    const double rel = std::abs(rep.sup_min_distance / oracle - 1.0);
    auto control = visibility_experiment(disk, ApproachSequence::radial(disk, CVec{1.0}, deltas),
                                         ApproachSequence::tangential(disk, CVec{1.0}, deltas), CVec{0.0});
    return {rep.stabilized && rel <= 0.05 && !control.stabilized,
            "sup " + fmt(rep.sup_min_distance, 5) + " vs oracle " + fmt(oracle, 5) + " (rel " + fmt(rel) + ", tol 0.05), " +
                (rep.stabilized ? "stabilized" : "not stabilized") + "; control " +
                (control.stabilized ? "stabilized" : "not stabilized")};
}

Outcome gromov() {
    auto disk = DomainSpec::unit_disk();
    double worst = 0.0;
    for (double r : {0.5, 0.9, 0.99}) {
        auto g = gromov_product(disk, CVec{r}, CVec{-r}, CVec{0.0});
        worst = std::max({worst, std::abs(g.lower), std::abs(g.upper)});
    }
    std::vector<double> deltas{0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
    auto seq = ApproachSequence::radial(disk, CVec{1.0}, deltas);
    auto control = gromov_boundedness_experiment(disk, seq, seq, CVec{0.0});
    const double at = control.table.back().back().lower;
    return {worst <= 1e-9 && at > 3.0,
            "max |(r|-r)_0| " + fmt(worst) + " (tol 1e-9); control at delta = 1e-3: " + fmt(at, 5) + " (> 3.0)"};
}

Outcome wolff_denjoy() {
    auto disk = DomainSpec::unit_disk();
    auto ball = DomainSpec::unit_ball(2);
    auto valid = [](const DomainSpec& d, const std::string& name) { return validate_map(d, corpus_map(name).map); };
    std::vector<CPoint> bases{CVec{0.0}, CVec{Complex{0.0, 0.5}}, CVec{-0.7}, CVec{Complex{0.3, 0.3}}, CVec{Complex{0.0, -0.2}}};
    auto rot = multi_start_consistency(disk, valid(disk, "rotation"), bases, 100);
    bool ok = rot.consistent && rot.verdicts.front().kind == OrbitKind::Compact;

    auto hyp = multi_start_consistency(disk, valid(disk, "disk_hyperbolic"), bases, 100);
    double err_h = 0.0;
    for (const auto& v : hyp.verdicts) err_h = std::max(err_h, v.xi ? euclidean_distance(*v.xi, CVec{1.0}) : INFINITY);
    ok = ok && hyp.consistent && err_h < 1e-3;

    std::vector<CPoint> bb{CVec{0.0, 0.0}, CVec{0.5, 0.0}, CVec{0.0, Complex{0.0, 0.6}}, CVec{-0.4, 0.4}, CVec{Complex{0.2, 0.2}, -0.3}};
    auto bm = multi_start_consistency(ball, valid(ball, "ball_boundary_contraction"), bb, 100);
    double err_b = 0.0;
    for (const auto& v : bm.verdicts) err_b = std::max(err_b, v.xi ? euclidean_distance(*v.xi, CVec{1.0, 0.0}) : INFINITY);
    ok = ok && bm.consistent && err_b < 1e-3;
    return {ok, "rotation " + to_string(rot.verdicts.front().kind) + "; hyperbolic " + to_string(hyp.verdicts.front().kind) +
                    " max |xi - 1| " + fmt(err_h) + "; ball " + to_string(bm.verdicts.front().kind) + " max |xi - (1,0)| " +
                    fmt(err_b) + " (tol 1e-3)"};
}

fs::path scratch_root() { return fs::temp_directory_path() / ("goldilocks_acceptance_" + std::to_string(::getpid())); }

std::map<std::string, std::string> csvs(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream os;
            os << in.rdbuf();
            out[e.path().filename().string()] = os.str();
        }
    return out;
}

Outcome determinism() {
    auto cfg = [](const std::string& kind, const std::string& domain) {
        return Json{{"schema_version", kSchemaVersion}, {"experiment", kind}, {"domain", {{"corpus", domain}}}, {"seed", 11}};
    };
    std::vector<Json> configs;
    configs.push_back(cfg("metric-table", "LensBalls2"));
    configs.back()["resolutions"] = {{"samples", 50}};
    configs.push_back(cfg("geodesic", "BallPair2"));
    configs.back()["params"] = {{"x", {{0.1, 0.0}, {0.0, 0.2}}}, {"y", {{-0.5, 0.1}, {0.3, 0.0}}}};
    configs.back()["resolutions"] = {{"path_samples", 32}};
    configs.push_back(cfg("goldilocks", "UnitBall2"));
    configs.back()["resolutions"] = {{"grid_levels", 6}, {"shell_directions", 8}};
    configs.push_back(cfg("visibility", "UnitDisk"));
    configs.back()["params"] = {{"xi", {{1.0, 0.0}}}, {"eta", {{0.0, 1.0}}}, {"deltas", {0.1, 0.03, 0.01}}};
    configs.push_back(cfg("gromov", "UnitDisk"));
    configs.back()["params"] = {{"xi", {{1.0, 0.0}}}, {"eta", {{-1.0, 0.0}}}};
    configs.push_back(cfg("dynamics", "UnitBall2"));
    configs.back()["params"] = {{"map_corpus", "ball_boundary_contraction"}};

    const fs::path root = scratch_root();
    std::string failures;
    std::size_t files = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::map<std::string, std::string> first;
        for (int rep = 0; rep < 2; ++rep) {
            RunOverrides ov;
            ov.output_dir = (root / (std::to_string(i) + "_" + std::to_string(rep))).string();
            if (rep == 1) ov.threads = 3;
            run(parse_config(configs[i]), ov);
            auto now = csvs(*ov.output_dir);
            if (rep == 0)
                first = std::move(now);
            else if (now != first || first.empty())
                failures += " " + configs[i].at("experiment").get<std::string>();
        }
        files += first.size();
    }
    fs::remove_all(root);
    return {failures.empty(), "6 experiment kinds, " + std::to_string(files) + " CSV files compared across runs and thread counts" +
                                  (failures.empty() ? "" : "; differing:" + failures)};
}

#ifdef GOLDILOCKS_SUITES
Outcome invariant_suites() {
    std::string failures;
    int suites = 0;
    std::stringstream list(GOLDILOCKS_SUITES);
    std::string exe;
    while (std::getline(list, exe, ';')) {
        if (exe.empty()) continue;
        ++suites;
        std::string cmd = exe + " --test-case='property*' --no-intro --minimal > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) failures += " " + fs::path(exe).filename().string();
    }
    std::string detail = std::to_string(suites) + " property suites" + (failures.empty() ? " pass" : "; failing:" + failures);

    // Entries checked literally as written. The unit suites assert the corrected statement where the
    // literal one is false, so a mismatch shows up only here.
    std::string literal;
    const auto grid = geometric_grid(1e-3, 0.5, 12);
    for (const char* name : {"UnitDisk", "UnitBall2", "Polydisk2", "Egg2_1_2"}) {
        auto c = condition1_test(corpus_domain(name).domain, grid);
        if (c.verdict != Verdict::Converges) literal += std::string(" ") + name + " condition1 " + to_string(c.verdict);
    }
    if (!literal.empty())
        detail += "; literal entry 'condition1 converges on UnitDisk, UnitBall, Polydisk, Egg' fails:" + literal +
                  " (polydisk faces carry flat complex lines, M >= 1, so the integral of M/r diverges)";
    return {failures.empty() && literal.empty(), detail};
}
#endif

}  // namespace

int main() {
    std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
        {1, "disk metric exactness", 1.0, disk_exactness},
        {2, "Graham sandwich soundness", 30.0, graham_sandwich},
        {3, "M closed forms", 60.0, shell_closed_forms},
        {4, "condition-1 quadrature and Psi threshold", 10.0, condition1_quadrature},
        {5, "condition-2 fit", 10.0, condition2},
        {6, "geodesic solver accuracy", 120.0, geodesic_accuracy},
        {7, "quasi-to-almost smoothing", 120.0, smoothing},
        {8, "visibility", 120.0, visibility},
        {9, "Gromov product", 10.0, gromov},
        {10, "Wolff-Denjoy", 30.0, wolff_denjoy},
        {11, "determinism", 0.0, determinism},
#ifdef GOLDILOCKS_SUITES
        {12, "invariant suites", 0.0, invariant_suites},
#endif
    };
    int failed = 0;
    for (auto& [id, name, budget, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt(secs) + " s";
        if (budget > 0.0) {
            timing += " (budget " + fmt(budget) + " s)";
            if (secs >= budget) o.pass = false;
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " [" << timing << "]"
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed;
}
