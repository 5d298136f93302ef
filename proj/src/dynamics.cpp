#include "goldilocks/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) { return numeric::format_double(x); }

}  // namespace

Complex Polynomial::eval(const CPoint& z) const {
    Complex s{0.0, 0.0};
    for (const auto& t : terms) {
        if (t.powers.size() != z.dim()) throw DimensionMismatch("monomial arity differs from the point dimension");
        Complex m = t.coeff;
        for (std::size_t j = 0; j < z.dim(); ++j)
            for (unsigned p = 0; p < t.powers[j]; ++p) m *= z[j];
        s += m;
    }
    return s;
}

CPoint SelfMap::operator()(const CPoint& z) const {
    if (z.dim() != dim || components.size() != dim) throw DimensionMismatch("self-map arity differs from the point dimension");
    CPoint out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto& c = components[j];
        Complex den = c.denominator.terms.empty() ? Complex{1.0, 0.0} : c.denominator.eval(z);
        out[j] = c.numerator.eval(z) / den;
    }
    return out;
}

double SelfMap::min_denominator(const CPoint& z) const {
    double m = kInf;
    for (const auto& c : components)
        m = std::min(m, c.denominator.terms.empty() ? 1.0 : std::abs(c.denominator.eval(z)));
    return m;
}

SelfMap validate_map(const DomainSpec& domain, const SelfMap& map, const ValidationConfig& config) {
    if (map.dim != domain.dim() || map.components.size() != domain.dim())
        throw DimensionMismatch("validate_map: map arity differs from the domain dimension");
    Rng rng(config.seed);
    std::vector<CPoint> grid = sample_interior(domain, config.interior_samples, rng);
    const std::size_t interior = grid.size();
    for (double delta : config.boundary_strata)
        for (std::size_t k = 0; k < config.per_stratum; ++k) {
            CVector dir = CVec::from_real(numeric::random_unit(rng, 2 * domain.dim()));
            try {
                grid.push_back(point_at_boundary_distance(domain, dir, delta));
            } catch (const InvalidArgument&) {
            }
        }

    std::vector<CPoint> images;
    images.reserve(grid.size());
    for (const auto& z : grid) {
        if (map.min_denominator(z) < config.denominator_floor)
            throw MapRejected("validate_map: denominator vanishes on the sample grid", z);
        CPoint w = map(z);
        if (!w.finite() || !membership(domain, w)) throw MapRejected("validate_map: a sample maps outside the domain", z);
        images.push_back(std::move(w));
    }

    // holomorphic maps do not increase the Kobayashi distance
    std::uniform_int_distribution<std::size_t> pick(0, interior - 1);
    for (std::size_t k = 0; k < config.lipschitz_pairs && interior >= 2; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        double before = distance(domain, grid[i], grid[j]).upper;
        double after = distance_lower_only(domain, images[i], images[j]).lower;
        if (after > before + config.lipschitz_slack * (1.0 + before))
            throw MapRejected("validate_map: map increases the Kobayashi distance on a sampled pair", grid[i]);
    }
    SelfMap out = map;
    out.validated = true;
    return out;
}

OrbitTrace iterate(const DomainSpec& domain, const SelfMap& map, const CPoint& o, std::size_t N, const IterateOptions& opts) {
    if (!map.validated) throw InvalidArgument("iterate: map has not been validated");
    check_dim(domain, o);
    if (!membership(domain, o)) throw OutsideDomain("iterate: base point outside domain");
    OrbitTrace t;
    t.base = o;
    auto record = [&](const CPoint& z) {
        double ret = kInf;
        for (const auto& p : t.points) ret = std::min(ret, euclidean_distance(z, p));
        t.points.push_back(z);
        t.delta.push_back(boundary_distance(domain, z));
        MetricEstimate k = distance(domain, z, o, opts.distance);
        t.displacement_lower.push_back(k.lower);
        t.displacement_upper.push_back(k.upper);
        t.return_distance.push_back(ret);
    };
    record(o);
    for (std::size_t n = 1; n <= N; ++n) {
        const CPoint& z = t.points.back();
        if (map.min_denominator(z) == 0.0) throw OrbitEscaped("iterate: denominator vanishes along the orbit", n);
        CPoint w = map(z);
        if (!w.finite() || !membership(domain, w))
            throw OrbitEscaped("iterate: orbit left the domain at n = " + std::to_string(n), n);
        record(w);
        if (t.delta.back() < opts.delta_floor) {
            t.boundary_contact = true;
            break;
        }
    }
    return t;
}

OrbitTrace subsample(const OrbitTrace& trace, std::size_t stride) {
    if (stride == 0) throw InvalidArgument("subsample: stride must be positive");
    OrbitTrace s;
    s.base = trace.base;
    s.boundary_contact = trace.boundary_contact;
    for (std::size_t n = 0; n < trace.points.size(); n += stride) {
        double ret = kInf;
        for (const auto& p : s.points) ret = std::min(ret, euclidean_distance(trace.points[n], p));
        s.points.push_back(trace.points[n]);
        s.delta.push_back(trace.delta[n]);
        s.displacement_lower.push_back(trace.displacement_lower[n]);
        s.displacement_upper.push_back(trace.displacement_upper[n]);
        s.return_distance.push_back(ret);
    }
    return s;
}

std::string to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::Compact: return "compact";
        case OrbitKind::Wolff: return "wolff";
        case OrbitKind::Undecided: return "undecided";
    }
    return "?";
}

OrbitVerdict classify(const DomainSpec& domain, const OrbitTrace& trace, const OrbitThresholds& th) {
    OrbitVerdict v;
    const std::size_t n = trace.points.size();
    if (n < th.warmup) {
        v.evidence.push_back("trace shorter than warmup (" + std::to_string(n) + " < " + std::to_string(th.warmup) + ")");
        return v;
    }
    const std::size_t len = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(th.tail_fraction * n)));
    const std::size_t start = n - std::min(len, n);

    const double final_delta = trace.delta.back();
    const std::size_t half = start + (n - start) / 2;
    double early = 0.0, late = 0.0;
    for (std::size_t i = start; i < half; ++i) early += trace.delta[i];
    for (std::size_t i = half; i < n; ++i) late += trace.delta[i];
    early /= static_cast<double>(std::max<std::size_t>(1, half - start));
    late /= static_cast<double>(std::max<std::size_t>(1, n - half));
    const bool decreasing = late < early || trace.boundary_contact;
    const bool approaching = final_delta < th.boundary_delta && decreasing;

    double diameter = 0.0;
    CPoint centroid(trace.points.front().dim());
    for (std::size_t i = start; i < n; ++i) {
        centroid += trace.points[i];
        for (std::size_t j = i + 1; j < n; ++j) diameter = std::max(diameter, euclidean_distance(trace.points[i], trace.points[j]));
    }
    centroid = centroid * (1.0 / static_cast<double>(n - start));

    if (approaching) {
        v.evidence.push_back("final delta " + fmt(final_delta) + " < " + fmt(th.boundary_delta) + " with decreasing tail trend");
        const double limit = th.diameter_factor * (final_delta + th.diameter_floor);
        if (diameter < limit) {
            v.kind = OrbitKind::Wolff;
            const CPoint& anchor = membership(domain, centroid) ? centroid : trace.points.back();
            v.xi = nearest_boundary_point(domain, anchor);
            v.evidence.push_back("tail diameter " + fmt(diameter) + " < " + fmt(limit));
        } else {
            v.evidence.push_back("tail diameter " + fmt(diameter) + " >= " + fmt(limit));
        }
        return v;
    }

    double max_disp = 0.0;
    for (double d : trace.displacement_upper) max_disp = std::max(max_disp, d);
    double best_return = kInf;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < n; ++i) best_return = std::min(best_return, trace.return_distance[i]);
    const bool bounded = max_disp < th.displacement_bound;
    const bool recurrent = best_return < th.recurrence_eps;
    v.evidence.push_back("max displacement " + fmt(max_disp) + (bounded ? " < " : " >= ") + fmt(th.displacement_bound));
    v.evidence.push_back("tail return distance " + fmt(best_return) + (recurrent ? " < " : " >= ") + fmt(th.recurrence_eps));
    if (bounded && recurrent) v.kind = OrbitKind::Compact;
    return v;
}

MultiStartReport multi_start_consistency(const DomainSpec& domain, const SelfMap& map, const std::vector<CPoint>& bases,
                                         std::size_t N, const OrbitThresholds& thresholds, double xi_tolerance,
                                         unsigned threads) {
    if (bases.size() < 5) throw InvalidArgument("multi_start_consistency: need at least 5 base points");
    MultiStartReport rep;
    rep.traces.resize(bases.size());
    rep.verdicts.resize(bases.size());
    numeric::parallel_for(bases.size(), threads, [&](std::size_t i) {
        rep.traces[i] = iterate(domain, map, bases[i], N);
        rep.verdicts[i] = classify(domain, rep.traces[i], thresholds);
    });
    std::ostringstream diag;
    bool same = true;
    for (const auto& v : rep.verdicts) same = same && v.kind == rep.verdicts.front().kind;
    if (same && rep.verdicts.front().kind == OrbitKind::Wolff)
        for (std::size_t i = 0; i < rep.verdicts.size(); ++i)
            for (std::size_t j = i + 1; j < rep.verdicts.size(); ++j)
                rep.xi_spread = std::max(rep.xi_spread, euclidean_distance(*rep.verdicts[i].xi, *rep.verdicts[j].xi));
    rep.consistent = same && rep.xi_spread < xi_tolerance;
    if (!same)
        diag << "verdicts disagree across base points: falsification candidate";
    else if (!rep.consistent)
        diag << "Wolff points spread " << fmt(rep.xi_spread) << " exceeds " << fmt(xi_tolerance) << ": falsification candidate";
    else
        diag << "all " << bases.size() << " base points give " << to_string(rep.verdicts.front().kind);
    rep.diagnostics = diag.str();
    return rep;
}

}  // namespace gold
