#include "goldilocks/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "goldilocks/geodesics.hpp"

namespace gold {

std::string to_string(BoundRule rule) {
    switch (rule) {
        case BoundRule::None: return "none";
        case BoundRule::ExactFormula: return "exact-formula";
        case BoundRule::GrahamLower: return "graham-lower";
        case BoundRule::GrahamUpper: return "graham-upper";
        case BoundRule::EnclosingBall: return "enclosing-ball";
        case BoundRule::InscribedBall: return "inscribed-ball";
        case BoundRule::AssumedFiniteType: return "assumed-finite-type";
        case BoundRule::PathWitness: return "path-witness";
        case BoundRule::EuclideanLower: return "euclidean-lower";
    }
    return "?";
}

namespace model {

double disk_metric(Complex z, Complex v) {
    double one_minus = 1.0 - std::norm(z);
    if (one_minus <= 0.0) throw OutsideDomain("disk_metric: point outside the unit disk");
    return std::abs(v) / one_minus;
}

double disk_distance(Complex z, Complex w) {
    double nz = std::norm(z), nw = std::norm(w);
    if (nz >= 1.0 || nw >= 1.0) throw OutsideDomain("disk_distance: point outside the unit disk");
    Complex den = 1.0 - z * std::conj(w);
    double den2 = std::norm(den);
    double q = std::abs(z - w) / std::sqrt(den2);
    return numeric::arctanh_from_complement(q, (1.0 - nz) * (1.0 - nw) / den2);
}

double ball_metric(const CPoint& z, const CVector& v) {
    double one_minus = 1.0 - z.norm_sq();
    if (one_minus <= 0.0) throw OutsideDomain("ball_metric: point outside the unit ball");
    double a = std::norm(hermitian(z, v));
    return std::sqrt(v.norm_sq() / one_minus + a / (one_minus * one_minus));
}

double ball_distance(const CPoint& z, const CPoint& w) {
    double nz = z.norm_sq(), nw = w.norm_sq();
    if (nz >= 1.0 || nw >= 1.0) throw OutsideDomain("ball_distance: point outside the unit ball");
    Complex zw = hermitian(z, w);
    double den2 = std::norm(1.0 - zw);
    // |1-<z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - (|z|^2|w|^2 - |<z,w>|^2)
    double num = (z - w).norm_sq() - std::max(0.0, nz * nw - std::norm(zw));
    double q = std::sqrt(std::max(0.0, num) / den2);
    return numeric::arctanh_from_complement(q, (1.0 - nz) * (1.0 - nw) / den2);
}

double ball_metric(const CPoint& center, double radius, const CPoint& z, const CVector& v) {
    return ball_metric((z - center) * (1.0 / radius), v * (1.0 / radius));
}

double ball_distance(const CPoint& center, double radius, const CPoint& z, const CPoint& w) {
    return ball_distance((z - center) * (1.0 / radius), (w - center) * (1.0 / radius));
}

}  // namespace model

double euclidean_lower_constant(const DomainSpec& domain) { return 1.0 / domain.enclosing_radius(); }

namespace {

std::optional<double> exact_metric(const DomainSpec& domain, const CPoint& z, const CVector& v) {
    switch (domain.kind()) {
        case DomainKind::UnitDisk:
        case DomainKind::UnitBall:
            return model::ball_metric(z, v);
        case DomainKind::Polydisk: {
            const auto& radii = std::get<PolydiskShape>(domain.shape()).radii;
            double k = 0.0;
            for (std::size_t j = 0; j < radii.size(); ++j)
                k = std::max(k, model::disk_metric(z[j] / radii[j], v[j] / radii[j]));
            return k;
        }
        default:
            return std::nullopt;
    }
}

std::optional<double> exact_distance(const DomainSpec& domain, const CPoint& x, const CPoint& y) {
    switch (domain.kind()) {
        case DomainKind::UnitDisk:
        case DomainKind::UnitBall:
            return model::ball_distance(x, y);
        case DomainKind::Polydisk: {
            const auto& radii = std::get<PolydiskShape>(domain.shape()).radii;
            double k = 0.0;
            for (std::size_t j = 0; j < radii.size(); ++j)
                k = std::max(k, model::disk_distance(x[j] / radii[j], y[j] / radii[j]));
            return k;
        }
        default:
            return std::nullopt;
    }
}

void raise_lower(MetricEstimate& e, double value, BoundRule rule) {
    if (value > e.lower) {
        e.lower = value;
        e.lower_rule = rule;
    }
}

void lower_upper(MetricEstimate& e, double value, BoundRule rule) {
    if (value < e.upper) {
        e.upper = value;
        e.upper_rule = rule;
    }
}

// Balls that contain the domain, used for inclusion lower bounds on the distance.
std::vector<BallPiece> containing_balls(const DomainSpec& domain) {
    std::vector<BallPiece> out{BallPiece{CVec(domain.dim()), domain.enclosing_radius()}};
    if (const auto* c = std::get_if<ConvexPieces>(&domain.shape()))
        out.insert(out.end(), c->balls.begin(), c->balls.end());
    if (const auto* s = std::get_if<IntersectionShape>(&domain.shape())) {
        out.insert(out.end(), s->first.balls.begin(), s->first.balls.end());
        out.insert(out.end(), s->second.balls.begin(), s->second.balls.end());
    }
    return out;
}

}  // namespace

MetricEstimate infinitesimal_metric(const DomainSpec& domain, const CPoint& z, const CVector& v) {
    check_dim(domain, z);
    check_dim(domain, v);
    if (v.norm() == 0.0) throw InvalidArgument("infinitesimal_metric: zero direction");
    if (!membership(domain, z)) throw OutsideDomain("infinitesimal_metric: point outside domain");

    if (auto k = exact_metric(domain, z, v)) return MetricEstimate::exact_value(*k);

    const double vn = v.norm();
    MetricEstimate e;
    if (domain.convex()) {
        RadiusBounds r = disk_radius_bounds(domain, z, v);
        raise_lower(e, vn / (2.0 * r.upper), BoundRule::GrahamLower);
        lower_upper(e, vn / r.lower, BoundRule::GrahamUpper);
    } else {
        raise_lower(e, euclidean_lower_constant(domain) * vn, BoundRule::EuclideanLower);
        raise_lower(e, model::ball_metric(CVec(domain.dim()), domain.enclosing_radius(), z, v), BoundRule::EnclosingBall);
        lower_upper(e, vn / boundary_distance(domain, z), BoundRule::InscribedBall);
    }
    if (const auto& m = domain.lower_bound_model()) {
        double delta = boundary_distance(domain, z);
        raise_lower(e, m->c * vn / std::pow(delta, m->epsilon), BoundRule::AssumedFiniteType);
    }
    // the assumed model may be inconsistent with the certified upper side; keep the interval valid
    if (e.lower > e.upper) e.lower = e.upper;
    return e;
}

namespace {

// Gauss-Kronrod 7/15 on [-1, 1]; the Gauss nodes are the odd-indexed Kronrod nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double kronrod;
    double gauss;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double fc = f(c);
    double k = kWgk[7] * fc, g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double s = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
        k += kWgk[i] * s;
        if (i % 2 == 1) g += kWg[i / 2] * s;
    }
    return {k * h, g * h};
}

double gauss7(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double g = kWg[3] * f(c);
    for (int i = 1; i < 7; i += 2) g += kWg[i / 2] * (f(c - h * kXgk[i]) + f(c + h * kXgk[i]));
    return g * h;
}

double adaptive(const std::function<double(double)>& f, double lo, double hi, double rel_tol, int depth) {
    Panel p = gk15(f, lo, hi);
    if (depth <= 0 || std::abs(p.kronrod - p.gauss) <= rel_tol * std::abs(p.kronrod) + 1e-15) return p.kronrod;
    const double mid = 0.5 * (lo + hi);
    return adaptive(f, lo, mid, rel_tol, depth - 1) + adaptive(f, mid, hi, rel_tol, depth - 1);
}

std::function<double(double)> speed_along(const DomainSpec& domain, const CPoint& a, const CPoint& b, Side side) {
    return [&domain, a, delta = b - a, side](double t) {
        MetricEstimate k = infinitesimal_metric(domain, a + delta * t, delta);
        return side == Side::Lower ? k.lower : k.upper;
    };
}

}  // namespace

double segment_length(const DomainSpec& domain, const CPoint& a, const CPoint& b, Side side, int subdivisions) {
    if ((b - a).norm() == 0.0) return 0.0;
    auto f = speed_along(domain, a, b, side);
    // panels graded geometrically toward both ends, where the metric is largest when an
    // endpoint sits near the boundary; the breakpoints depend only on `subdivisions`
    const int half = std::max(1, subdivisions / 2);
    std::vector<double> cuts{0.0};
    for (int k = half - 1; k >= 1; --k) cuts.push_back(0.5 * std::ldexp(1.0, -k));
    cuts.push_back(0.5);
    for (int k = 1; k < half; ++k) cuts.push_back(1.0 - 0.5 * std::ldexp(1.0, -k));
    cuts.push_back(1.0);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += gauss7(f, cuts[i], cuts[i + 1]);
    return total;
}

std::vector<double> segment_lengths(const DomainSpec& domain, const SampledPath& path, Side side,
                                    const PathLengthOptions& opts) {
    path.validate();
    for (const auto& p : path.points)
        if (!membership(domain, p)) throw OutsideDomain("path_length: sample outside domain");
    std::vector<double> lengths(path.resolution(), 0.0);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if ((path.points[k + 1] - path.points[k]).norm() == 0.0) continue;
        auto f = speed_along(domain, path.points[k], path.points[k + 1], side);
        lengths[k] = adaptive(f, 0.0, 1.0, opts.tolerance, opts.max_refinements);
    }
    return lengths;
}

double path_length(const DomainSpec& domain, const SampledPath& path, Side side, const PathLengthOptions& opts) {
    auto lengths = segment_lengths(domain, path, side, opts);
    double total = 0.0;
    for (double l : lengths) total += l;
    return total;
}

MetricEstimate distance_lower_only(const DomainSpec& domain, const CPoint& x, const CPoint& y) {
    check_dim(domain, x);
    check_dim(domain, y);
    if (!membership(domain, x) || !membership(domain, y)) throw OutsideDomain("distance: point outside domain");
    if (auto k = exact_distance(domain, x, y)) return MetricEstimate::exact_value(*k);
    MetricEstimate e;
    if (x == y) {
        e.lower = 0.0;
        e.upper = 0.0;
        e.lower_rule = e.upper_rule = BoundRule::PathWitness;
        return e;
    }
    raise_lower(e, euclidean_lower_constant(domain) * euclidean_distance(x, y), BoundRule::EuclideanLower);
    for (const auto& b : containing_balls(domain))
        raise_lower(e, model::ball_distance(b.center, b.radius, x, y), BoundRule::EnclosingBall);
    return e;
}

MetricEstimate distance(const DomainSpec& domain, const CPoint& x_in, const CPoint& y_in,
                        const DistanceOptions& opts) {
    // Fixed endpoint order keeps the estimate symmetric in (x, y).
    const bool swap = y_in.to_real() < x_in.to_real();
    const CPoint& x = swap ? y_in : x_in;
    const CPoint& y = swap ? x_in : y_in;
    MetricEstimate e = distance_lower_only(domain, x, y);
    if (e.exact() || e.upper == 0.0) return e;
    if (opts.straight_witness) {
        SampledPath chord = SampledPath::segment(x, y, 16);
        bool interior = domain.convex();
        if (!interior) {
            interior = true;
            for (const auto& p : SampledPath::segment(x, y, 256).points)
                if (!membership(domain, p)) {
                    interior = false;
                    break;
                }
        }
        if (interior) lower_upper(e, path_length(domain, chord, Side::Upper, opts.path), BoundRule::PathWitness);
    }
    if (opts.optimize_path) {
        SampledPath best = minimize_path(domain, x, y);
        lower_upper(e, path_length(domain, best, Side::Upper, opts.path), BoundRule::PathWitness);
    }
    if (e.lower > e.upper) e.lower = e.upper;
    return e;
}

}  // namespace gold
