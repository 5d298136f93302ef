#include "goldilocks/goldilocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unit directions probing k(x; .) at a near-boundary point: the complex normal line and
// its Hermitian complement, where the extremes sit for the implemented families.
std::vector<CVector> probe_directions(const DomainSpec& domain, const CPoint& x, std::size_t extra, Rng& rng) {
    const std::size_t d = domain.dim();
    std::vector<CVector> out;
    CVec n = x - nearest_boundary_point(domain, x);
    if (n.norm() > 0.0) {
        n = normalized(n);
        out.push_back(n);
        out.push_back(n * Complex{0.0, 1.0});
        std::vector<CVec> frame{n};
        for (std::size_t j = 0; j < d && frame.size() < d; ++j) {
            CVec w = CVec::basis(d, j);
            for (const auto& f : frame) w -= f * hermitian(w, f);
            if (w.norm() < 1e-8) continue;
            w = normalized(w);
            frame.push_back(w);
            out.push_back(w);
        }
    } else {
        for (std::size_t j = 0; j < d; ++j) out.push_back(CVec::basis(d, j));
    }
    for (std::size_t k = 0; k < extra; ++k) out.push_back(CVec::from_real(numeric::random_unit(rng, 2 * d)));
    return out;
}

TailFit fit_power(const std::vector<double>& rs, const std::vector<double>& ms, double margin) {
    TailFit f;
    f.family = "power";
    std::vector<double> x, y;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        x.push_back(std::log(rs[i]));
        y.push_back(std::log(ms[i]));
    }
    auto line = numeric::fit_line(x, y);
    f.a = std::exp(line.intercept);
    f.exponent = line.slope;
    f.rss = line.rss;
    f.ok = std::isfinite(line.slope);
    if (f.exponent > margin)
        f.verdict = Verdict::Converges;
    else if (f.exponent < -margin)
        f.verdict = Verdict::Diverges;
    f.tail_integral = f.exponent > 0.0 ? f.a * std::pow(rs.front(), f.exponent) / f.exponent : kInf;
    return f;
}

TailFit fit_log(const std::vector<double>& rs, const std::vector<double>& ms, double margin) {
    TailFit f;
    f.family = "log";
    std::vector<double> x, y;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] >= 1.0) return f;
        x.push_back(std::log(std::log(1.0 / rs[i])));
        y.push_back(std::log(ms[i]));
    }
    auto line = numeric::fit_line(x, y);
    f.a = std::exp(line.intercept);
    f.exponent = -line.slope;
    f.rss = line.rss;
    f.ok = std::isfinite(line.slope);
    // u = log 1/r turns the tail into a * u^{-p} du
    if (f.exponent > 1.0 + margin)
        f.verdict = Verdict::Converges;
    else if (f.exponent < 1.0 - margin)
        f.verdict = Verdict::Diverges;
    double L = std::log(1.0 / rs.front());
    f.tail_integral = f.exponent > 1.0 ? f.a * std::pow(L, 1.0 - f.exponent) / (f.exponent - 1.0) : kInf;
    return f;
}

double aic(double rss, std::size_t n) {
    double per = std::max(rss / static_cast<double>(n), 1e-30);
    return static_cast<double>(n) * std::log(per) + 4.0;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::Diverges: return "diverges";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ShellEstimate estimate_M(const DomainSpec& domain, double r, const ShellSamplerConfig& config) {
    if (!(r > 0.0) || r >= domain.enclosing_radius())
        throw InvalidArgument("estimate_M: r must lie in (0, enclosing radius)");
    const CPoint& witness = domain.interior_witness();
    const double depth = boundary_distance(domain, witness);

    Rng rng(config.seed);
    std::vector<CPoint> points;
    bool witness_used = false;
    // coordinate axes first (they hit the distinguished boundary points of the corpus
    // shapes), then seeded random rays
    std::vector<CVector> dirs;
    if (config.axis_directions)
        for (std::size_t j = 0; j < domain.dim(); ++j)
            for (Complex c : {Complex{1.0, 0.0}, Complex{-1.0, 0.0}, Complex{0.0, 1.0}, Complex{0.0, -1.0}})
                dirs.push_back(CVec::basis(domain.dim(), j) * c);
    for (std::size_t i = 0; i < config.directions; ++i)
        dirs.push_back(CVec::from_real(numeric::random_unit(rng, 2 * domain.dim())));
    for (const auto& dir : dirs) {
        for (double stratum : config.strata) {
            double delta = r * stratum;
            if (delta >= depth) {
                // the witness itself lies in the shell
                if (!witness_used) points.push_back(witness);
                witness_used = true;
                continue;
            }
            try {
                points.push_back(point_at_boundary_distance(domain, dir, delta));
            } catch (const InvalidArgument&) {
            }
        }
    }
    if (points.empty()) throw EmptyShell("estimate_M: no interior shell points found");

    struct Local {
        double lower = 0.0, upper = 0.0;
        BoundRule rule = BoundRule::None;
        CVector v;
    };
    std::vector<Local> local(points.size());
    numeric::parallel_for(points.size(), config.threads, [&](std::size_t i) {
        Rng prng(config.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
        Local best;
        for (const auto& v : probe_directions(domain, points[i], config.random_tangents, prng)) {
            MetricEstimate k = infinitesimal_metric(domain, points[i], v);
            double up = k.lower > 0.0 ? 1.0 / k.lower : kInf;
            double lo = 1.0 / k.upper;
            if (up > best.upper) {
                best.upper = up;
                best.rule = k.lower_rule;
            }
            if (lo > best.lower) {
                best.lower = lo;
                best.v = v;
            }
        }
        local[i] = best;
    });

    ShellEstimate est;
    est.r = r;
    est.points = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (local[i].upper > est.upper) {
            est.upper = local[i].upper;
            est.upper_rule = local[i].rule;
        }
        if (local[i].lower > est.lower) {
            est.lower = local[i].lower;
            est.argmax = points[i];
            est.argmax_direction = local[i].v;
        }
    }
    return est;
}

std::vector<double> geometric_grid(double r_min, double r_max, std::size_t count) {
    if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) throw InvalidArgument("geometric_grid: need 0 < r_min < r_max, count >= 2");
    std::vector<double> out(count);
    const double q = std::log(r_max / r_min) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = r_min * std::exp(q * static_cast<double>(k));
    out.back() = r_max;
    return out;
}

namespace {

// Integral of M/r with log M interpolated linearly in log r: on each cell M = M_i (r/r_i)^s,
// so the cell contributes M_i ((r_{i+1}/r_i)^s - 1) / s. Exact for power laws.
double power_law_integral(const std::vector<double>& rs, const std::vector<double>& ms) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        const double lr = std::log(rs[i + 1] / rs[i]);
        const double s = std::log(ms[i + 1] / ms[i]) / lr;
        total += std::abs(s * lr) < 1e-12 ? ms[i] * lr : (ms[i + 1] - ms[i]) / s;
    }
    return total;
}

}  // namespace

Condition1Result condition1_from_table(std::vector<double> rs, std::vector<double> ms, const Condition1Config& config) {
    Condition1Result res;
    res.rs = rs;
    res.ms = ms;
    std::ostringstream diag;
    if (rs.size() != ms.size() || rs.size() < 3) {
        res.diagnostics = "need at least 3 (r, M) pairs";
        return res;
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (!(rs[i] > 0.0) || !(ms[i] > 0.0) || !std::isfinite(ms[i]) || (i > 0 && !(rs[i] > rs[i - 1]))) {
            res.diagnostics = "table must have increasing r > 0 and finite M > 0";
            return res;
        }
    }
    res.grid_integral = power_law_integral(rs, ms);

    std::size_t n_tail = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(config.tail_fraction * rs.size())));
    n_tail = std::min(n_tail, rs.size());
    std::vector<double> tr(rs.begin(), rs.begin() + n_tail), tm(ms.begin(), ms.begin() + n_tail);
    res.power = fit_power(tr, tm, config.margin);
    res.log = fit_log(tr, tm, config.margin);
    res.power.aic = aic(res.power.rss, n_tail);
    res.log.aic = res.log.ok ? aic(res.log.rss, n_tail) : kInf;

    const TailFit& better = res.power.aic <= res.log.aic ? res.power : res.log;
    const TailFit& other = &better == &res.power ? res.log : res.power;
    res.chosen = better.family;
    if (!better.ok) {
        diag << "tail fit failed";
    } else if (other.aic - better.aic > config.decisive_aic || !other.ok) {
        res.verdict = better.verdict;
        diag << better.family << " family preferred decisively (delta AIC " << other.aic - better.aic << ")";
    } else if (better.verdict == other.verdict) {
        res.verdict = better.verdict;
        diag << "both families agree";
    } else if (better.verdict == Verdict::Inconclusive || other.verdict == Verdict::Inconclusive) {
        // one family sits inside its margin band; the other one decides
        res.verdict = better.verdict == Verdict::Inconclusive ? other.verdict : better.verdict;
        diag << "one family inside its margin band; verdict from the other";
    } else {
        diag << "families disagree and neither is decisive";
    }
    res.integral = res.grid_integral + (res.verdict == Verdict::Diverges ? kInf : better.tail_integral);
    res.diagnostics = diag.str();
    return res;
}

Condition1Result condition1_test(const DomainSpec& domain, const std::vector<double>& r_grid,
                                 const ShellSamplerConfig& sampler, const Condition1Config& config,
                                 std::vector<ShellEstimate>* shell_table) {
    std::vector<double> rs(r_grid);
    std::sort(rs.begin(), rs.end());
    std::vector<double> ms;
    std::vector<ShellEstimate> table;
    for (double r : rs) {
        table.push_back(estimate_M(domain, r, sampler));
        ms.push_back(table.back().upper);
    }
    if (shell_table) *shell_table = std::move(table);
    return condition1_from_table(rs, ms, config);
}

Condition2Result condition2_fit(const DomainSpec& domain, const CPoint& x0, const std::vector<CPoint>& samples,
                                unsigned threads) {
    check_dim(domain, x0);
    if (!membership(domain, x0)) throw OutsideDomain("condition2_fit: base point outside domain");
    Condition2Result res;
    res.base = x0;
    res.samples.resize(samples.size());
    numeric::parallel_for(samples.size(), threads, [&](std::size_t i) {
        auto& s = res.samples[i];
        s.point = samples[i];
        s.delta = boundary_distance(domain, samples[i]);
        s.k_upper = distance(domain, x0, samples[i]).upper;
    });
    if (res.samples.size() < 3) throw InvalidArgument("condition2_fit: degenerate sample spread (fewer than 3 samples)");
    std::vector<double> xs, ys;
    for (const auto& s : res.samples) {
        xs.push_back(std::log(1.0 / s.delta));
        ys.push_back(s.k_upper);
    }
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*hi - *lo < std::log(10.0)) throw InvalidArgument("condition2_fit: degenerate sample spread (less than one decade in delta)");

    auto line = numeric::fit_line(xs, ys);
    res.alpha = line.slope;
    res.C_fit = line.intercept;
    res.rss = line.rss;
    double C = line.intercept;
    for (std::size_t i = 0; i < xs.size(); ++i) C = std::max(C, ys[i] - res.alpha * xs[i]);
    auto worst = [&] {
        double w = -kInf;
        for (std::size_t i = 0; i < xs.size(); ++i) w = std::max(w, ys[i] - (C + res.alpha * xs[i]));
        return w;
    };
    while (worst() > 0.0) C = std::nextafter(C, kInf);
    res.C = C;
    for (std::size_t i = 0; i < xs.size(); ++i) res.samples[i].residual = ys[i] - (C + res.alpha * xs[i]);
    res.max_positive_residual = std::max(0.0, worst());
    return res;
}

Condition2Result condition2_fit(const DomainSpec& domain, const CPoint& x0, const Condition2Config& config) {
    const double depth = boundary_distance(domain, domain.interior_witness());
    const double dmax = std::min(config.delta_max, 0.9 * depth);
    if (!(dmax > config.delta_min)) throw InvalidArgument("condition2_fit: degenerate sample spread (domain too thin)");
    auto deltas = geometric_grid(config.delta_min, dmax, std::max<std::size_t>(config.levels, 2));
    Rng rng(config.seed);
    std::vector<CPoint> samples;
    for (std::size_t i = 0; i < config.directions; ++i) {
        CVector dir = CVec::from_real(numeric::random_unit(rng, 2 * domain.dim()));
        for (double d : deltas) samples.push_back(point_at_boundary_distance(domain, dir, d));
    }
    return condition2_fit(domain, x0, samples, config.threads);
}

PsiThreshold psi_threshold_test(double s) {
    if (!(s > 0.0)) throw InvalidArgument("psi_threshold_test: s must be positive");
    PsiThreshold t;
    t.s = s;
    // with u = log 1/t the integrand becomes u^{-1/s} du on (U, inf)
    t.exponent = 1.0 / s;
    t.verdict = t.exponent > 1.0 ? Verdict::Converges : Verdict::Diverges;
    return t;
}

ConeLogBound cone_log_bound(const DomainSpec& domain, const std::optional<ConeReport>& report, const CPoint& x0,
                            const ConeLogConfig& config) {
    if (!report) throw InvalidArgument("cone_log_bound: cone report absent");
    if (!report->all_verified || report->samples.empty() || !(report->min_aperture > 0.0))
        throw InvalidArgument("cone_log_bound: cone condition not verified");
    const double theta = report->min_aperture;
    const double r0 = report->reach;
    const double cos_half = std::cos(theta / 2.0);

    ConeLogBound out;
    out.aperture = theta;
    out.reach = r0;
    const double alpha0 = std::max(1.0, std::numbers::pi / theta);
    bool found = false;
    for (std::size_t k = 0; k < config.max_steps && !found; ++k) {
        double alpha = alpha0 + config.alpha_step * static_cast<double>(k);
        double R = r0 / std::pow(2.0, 1.0 / alpha) * (1.0 - 1e-12);
        bool inside = true;
        for (std::size_t j = 0; j < config.circle_samples && inside; ++j) {
            double phi = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 0.5) / static_cast<double>(config.circle_samples);
            Complex w = R * std::pow(1.0 + std::polar(1.0, phi), 1.0 / alpha);
            if (std::abs(w) >= r0 || w.real() <= cos_half * std::abs(w)) inside = false;
        }
        if (inside) {
            out.alpha = alpha;
            out.R = R;
            found = true;
        }
    }
    if (!found) throw Error("cone_log_bound: no cone map fits inside the verified cone cap");
    out.slope = out.alpha / 2.0;

    double C1 = 0.0;
    for (const auto& s : report->samples) {
        const auto& cone = *s.cone;
        CPoint q = cone.vertex + cone.axis * out.R;
        if (!membership(domain, q)) throw Error("cone_log_bound: cone-map centre left the domain");
        C1 = std::max(C1, distance(domain, q, x0).upper);
        // deep samples belong to the compact core themselves
        if (euclidean_distance(s.point, cone.vertex) > out.R) C1 = std::max(C1, distance(domain, s.point, x0).upper);
    }
    out.C1 = C1;
    out.C = C1 + 0.5 * std::log(2.0 * std::pow(out.R, out.alpha));
    return out;
}

double convexity_order_ratio(const DomainSpec& domain, const std::vector<CPoint>& samples, double m) {
    double worst = 0.0;
    Rng rng(3);
    for (const auto& x : samples) {
        double delta = boundary_distance(domain, x);
        double best = 0.0;
        for (const auto& v : probe_directions(domain, x, 2, rng))
            best = std::max(best, disk_radius_in_complex_line(domain, x, v));
        worst = std::max(worst, best / std::pow(delta, 1.0 / m));
    }
    return worst;
}

GoldilocksReport goldilocks_report(const DomainSpec& domain, const GoldilocksConfig& config) {
    GoldilocksReport rep;
    std::vector<double> grid = config.r_grid.empty() ? geometric_grid(1e-3, 0.5, 16) : config.r_grid;
    rep.condition1 = condition1_test(domain, grid, config.sampler, config.condition1, &rep.shell_table);
    for (std::size_t i = 1; i < rep.shell_table.size(); ++i)
        if (rep.shell_table[i].upper < rep.shell_table[i - 1].upper * (1.0 - 1e-6)) rep.shell_monotone = false;

    rep.condition2 = condition2_fit(domain, domain.interior_witness(), config.condition2);

    const double depth = boundary_distance(domain, domain.interior_witness());
    Rng rng(config.sampler.seed + 1);
    std::vector<CPoint> cone_points;
    for (std::size_t i = 0; i < config.cone_points; ++i) {
        CVector dir = CVec::from_real(numeric::random_unit(rng, 2 * domain.dim()));
        cone_points.push_back(point_at_boundary_distance(domain, dir, std::min(config.cone_delta, 0.5 * depth)));
    }
    rep.cone = cone_condition_check(domain, cone_points, config.cone);
    if (rep.cone.all_verified) rep.cone_bound = cone_log_bound(domain, rep.cone, domain.interior_witness());
    return rep;
}

}  // namespace gold
