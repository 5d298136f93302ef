#include "goldilocks/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// M-hat(delta) from a shell table: value at the smallest grid radius >= delta (M is
// nondecreasing), the top entry beyond the grid.
double shell_lookup(const std::vector<ShellEstimate>& shell, double delta) {
    for (const auto& s : shell)
        if (s.r >= delta) return s.upper;
    return shell.back().upper;
}

}  // namespace

std::string to_string(ApproachMode m) {
    switch (m) {
        case ApproachMode::Radial: return "radial";
        case ApproachMode::Tangential: return "tangential";
        case ApproachMode::Custom: return "custom";
    }
    return "?";
}

ApproachSequence ApproachSequence::radial(const DomainSpec& domain, const CPoint& target, const std::vector<double>& deltas) {
    check_dim(domain, target);
    CVector u = normalized(domain.interior_witness() - target);
    ApproachSequence s;
    s.target = target;
    s.mode = ApproachMode::Radial;
    for (double d : deltas) s.points.push_back(target + u * d);
    s.validate(domain);
    return s;
}

ApproachSequence ApproachSequence::tangential(const DomainSpec& domain, const CPoint& target,
                                              const std::vector<double>& deltas) {
    check_dim(domain, target);
    if (std::abs(target.norm() - 1.0) > 1e-12) throw InvalidArgument("tangential approach needs a unit target");
    ApproachSequence s;
    s.target = target;
    s.mode = ApproachMode::Tangential;
    for (double d : deltas) s.points.push_back(target * ((1.0 - d) * std::polar(1.0, std::sqrt(d))));
    s.validate(domain);
    return s;
}

ApproachSequence ApproachSequence::custom(const DomainSpec& domain, const CPoint& target, std::vector<CPoint> points) {
    ApproachSequence s;
    s.target = target;
    s.points = std::move(points);
    s.mode = ApproachMode::Custom;
    s.validate(domain);
    return s;
}

void ApproachSequence::validate(const DomainSpec& domain) const {
    check_dim(domain, target);
    double prev = kInf;
    for (std::size_t n = 0; n < points.size(); ++n) {
        check_dim(domain, points[n]);
        if (!membership(domain, points[n])) throw OutsideDomain("approach sequence point " + std::to_string(n) + " is not interior");
        double d = euclidean_distance(points[n], target);
        if (!(d < prev)) throw InvalidArgument("approach sequence must move strictly closer to its target");
        prev = d;
    }
}

bool stabilizes(const std::vector<double>& values, double fraction, double rel_tol) {
    const std::size_t n = values.size();
    if (n < 4) return false;
    std::size_t window = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
    double before = -kInf, after = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        after = std::max(after, values[i]);
        if (i + window < n) before = after;
    }
    double change = after - before;
    return change <= rel_tol * std::abs(after) + 1e-9;
}

VisibilityReport visibility_experiment(const DomainSpec& domain, const ApproachSequence& seq_xi,
                                       const ApproachSequence& seq_eta, const CPoint& o,
                                       const VisibilityConfig& config) {
    seq_xi.validate(domain);
    seq_eta.validate(domain);
    check_dim(domain, o);
    if (!membership(domain, o)) throw OutsideDomain("visibility_experiment: base point outside domain");
    const std::size_t trials = std::min(seq_xi.points.size(), seq_eta.points.size());
    if (trials == 0) throw InvalidArgument("visibility_experiment: empty approach sequences");

    VisibilityReport rep;
    rep.note = "only solver-produced almost-geodesics are sampled; the visibility property quantifies over all of them";

    double dmin = kInf;
    for (std::size_t n = 0; n < trials; ++n)
        dmin = std::min({dmin, boundary_distance(domain, seq_xi.points[n]), boundary_distance(domain, seq_eta.points[n])});
    const double rmax = 0.99 * std::min(domain.enclosing_radius(), boundary_distance(domain, domain.interior_witness()));
    const double rmin = std::min(0.5 * dmin, 0.5 * rmax);
    for (double r : geometric_grid(rmin, rmax, std::max<std::size_t>(config.shell_levels, 2)))
        rep.shell.push_back(estimate_M(domain, r, config.sampler));

    rep.trials.resize(trials);
    numeric::parallel_for(trials, config.threads, [&](std::size_t n) {
        VisibilityTrial& t = rep.trials[n];
        t.index = n;
        t.x = seq_xi.points[n];
        t.y = seq_eta.points[n];
        try {
            SampledPath raw = minimize_path(domain, t.x, t.y, config.geodesic);
            SampledPath path = unit_speed_reparametrize(domain, raw, config.path_samples);
            t.certificate = certify(domain, path, config.lambda);
            t.certified = !t.certificate.lambda_raised && t.certificate.kappa <= config.kappa;

            t.min_delta = kInf;
            t.min_distance = kInf;
            for (std::size_t k = 0; k < path.size(); ++k) {
                double d = boundary_distance(domain, path.points[k]);
                t.max_delta = std::max(t.max_delta, d);
                t.min_delta = std::min(t.min_delta, d);
                double dist = distance(domain, o, path.points[k]).upper;
                if (dist < t.min_distance) {
                    t.min_distance = dist;
                    t.closest = path.points[k];
                    t.closest_index = k;
                }
            }

            // secant speeds against lambda * M-hat(delta) along the path
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                double dt = path.params[k + 1] - path.params[k];
                double speed = euclidean_distance(path.points[k + 1], path.points[k]) / dt;
                double delta = std::max(boundary_distance(domain, path.points[k]), boundary_distance(domain, path.points[k + 1]));
                double bound = config.lambda * shell_lookup(rep.shell, delta);
                t.speed_ratio = std::max(t.speed_ratio, speed / bound);
            }
            t.speed_ok = t.speed_ratio <= 1.0 + config.speed_tolerance;

            const CPoint& a = path.points.front();
            const CPoint& b = path.points.back();
            t.midpoint_defect = distance(domain, a, t.closest).upper + distance(domain, t.closest, b).upper -
                                distance_lower_only(domain, a, b).lower;
            t.path = std::move(path);
            t.ok = true;
        } catch (const Error& e) {
            t.ok = false;
            t.failure = e.what();
        }
    });

    double sup = 0.0;
    for (const auto& t : rep.trials) {
        if (!t.ok) continue;
        sup = std::max(sup, t.min_distance);
        rep.running_sup.push_back(sup);
    }
    rep.sup_min_distance = sup;
    rep.stabilized = stabilizes(rep.running_sup, config.stabilization_fraction, config.stabilization_tol);
    rep.verdict = rep.stabilized ? "visible" : "not visible";
    return rep;
}

MetricEstimate gromov_product(const DomainSpec& domain, const CPoint& x, const CPoint& y, const CPoint& o,
                              const DistanceOptions& opts) {
    MetricEstimate xo = distance(domain, x, o, opts);
    MetricEstimate oy = distance(domain, o, y, opts);
    MetricEstimate xy = distance(domain, x, y, opts);
    MetricEstimate g;
    g.lower = 0.5 * (xo.lower + oy.lower - xy.upper);
    g.upper = 0.5 * (xo.upper + oy.upper - xy.lower);
    bool exact = xo.exact() && oy.exact() && xy.exact();
    g.lower_rule = g.upper_rule = exact ? BoundRule::ExactFormula : BoundRule::PathWitness;
    return g;
}

GromovReport gromov_boundedness_experiment(const DomainSpec& domain, const ApproachSequence& seq_xi,
                                           const ApproachSequence& seq_eta, const CPoint& o,
                                           const GromovConfig& config) {
    seq_xi.validate(domain);
    seq_eta.validate(domain);
    GromovReport rep;
    const std::size_t N = seq_xi.points.size(), M = seq_eta.points.size();
    rep.table.assign(N, std::vector<MetricEstimate>(M));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t m = 0; m < M; ++m)
            rep.table[n][m] = gromov_product(domain, seq_xi.points[n], seq_eta.points[m], o, config.distance);
    double run = -kInf;
    for (std::size_t k = 0; k < std::min(N, M); ++k) {
        for (std::size_t j = 0; j <= k; ++j) run = std::max({run, rep.table[k][j].upper, rep.table[j][k].upper});
        rep.running_max.push_back(run);
    }
    rep.stabilized = stabilizes(rep.running_max, config.stabilization_fraction, config.stabilization_tol);
    rep.verdict = rep.stabilized ? "bounded" : "unbounded";
    return rep;
}

}  // namespace gold
