#include "goldilocks/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SampledPath with_uniform_params(std::vector<CPoint> nodes) {
    SampledPath p;
    const std::size_t n = nodes.size() - 1;
    for (std::size_t k = 0; k <= n; ++k) p.params.push_back(static_cast<double>(k) / static_cast<double>(n));
    p.points = std::move(nodes);
    return p;
}

class CurveShortener {
public:
    CurveShortener(const DomainSpec& domain, const GeodesicConfig& cfg) : domain_(domain), cfg_(cfg) {}

    void run(std::vector<CPoint>& nodes) const {
        const std::size_t n = nodes.size() - 1;
        std::vector<double> seg(n);
        for (std::size_t k = 0; k < n; ++k) seg[k] = length(nodes[k], nodes[k + 1]);
        std::vector<double> step(n + 1, 0.0);
        for (std::size_t i = 1; i < n; ++i) step[i] = 0.25 * euclidean_distance(nodes[i - 1], nodes[i + 1]);

        double total = sum(seg);
        int stalls = 0;
        for (int sweep = 0; sweep < cfg_.max_sweeps && stalls < cfg_.stall_sweeps; ++sweep) {
            const double before = total;
            for (std::size_t i = 1; i < n; ++i) relax_node(nodes, seg, step, i);
            total = sum(seg);
            if (before - total < cfg_.rel_tol * total)
                ++stalls;
            else
                stalls = 0;
        }
    }

private:
    double length(const CPoint& a, const CPoint& b) const {
        return segment_length(domain_, a, b, Side::Upper, cfg_.segment_subdivisions);
    }

    static double sum(const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }

    double local_cost(const std::vector<CPoint>& nodes, std::size_t i, const CPoint& q) const {
        if (!membership(domain_, q)) return kInf;
        return length(nodes[i - 1], q) + length(q, nodes[i + 1]);
    }

    void relax_node(std::vector<CPoint>& nodes, std::vector<double>& seg, std::vector<double>& step,
                    std::size_t i) const {
        const CPoint& p = nodes[i];
        const double current = seg[i - 1] + seg[i];
        const double scale = euclidean_distance(nodes[i - 1], nodes[i + 1]);
        if (scale == 0.0) return;
        const double h = 1e-7 * scale;

        std::vector<double> x = p.to_real();
        std::vector<double> g(x.size(), 0.0);
        double gn = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            std::vector<double> xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            double fp = local_cost(nodes, i, CVec::from_real(xp));
            double fm = local_cost(nodes, i, CVec::from_real(xm));
            if (std::isinf(fp) && std::isinf(fm)) continue;
            if (std::isinf(fp)) fp = current + (current - fm);
            if (std::isinf(fm)) fm = current + (current - fp);
            g[k] = (fp - fm) / (2.0 * h);
            gn += g[k] * g[k];
        }
        gn = std::sqrt(gn);
        if (gn == 0.0 || !std::isfinite(gn)) return;

        // backtracking along the descent direction; leaving the domain counts as failure,
        // which pulls the candidate back toward the accepted position
        double alpha = std::max(step[i], 1e-14 * scale);
        for (int tries = 0; tries < 30; ++tries) {
            std::vector<double> xc(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) xc[k] = x[k] - alpha * g[k] / gn;
            CPoint cand = CVec::from_real(xc);
            if (membership(domain_, cand)) {
                double a = length(nodes[i - 1], cand);
                double b = length(cand, nodes[i + 1]);
                if (a + b < current) {
                    nodes[i] = cand;
                    seg[i - 1] = a;
                    seg[i] = b;
                    step[i] = std::min(1.5 * alpha, 0.5 * scale);
                    return;
                }
            }
            alpha *= 0.5;
        }
        step[i] = alpha;
    }

    const DomainSpec& domain_;
    const GeodesicConfig& cfg_;
};

}  // namespace

SampledPath minimize_path(const DomainSpec& domain, const CPoint& x, const CPoint& y, const GeodesicConfig& config) {
    check_dim(domain, x);
    check_dim(domain, y);
    if (!membership(domain, x) || !membership(domain, y)) throw OutsideDomain("minimize_path: endpoint outside domain");
    if (x == y) return with_uniform_params({x, y});

    std::size_t n = std::max<std::size_t>(2, std::min(config.initial_resolution, config.max_resolution));
    SampledPath chord = SampledPath::segment(x, y, n);
    for (const auto& p : chord.points)
        if (!membership(domain, p))
            throw NoInteriorPath("minimize_path: the chord leaves the domain and no interior seed path is available");

    std::vector<CPoint> nodes = chord.points;
    CurveShortener shortener(domain, config);
    shortener.run(nodes);
    for (int stage = 0; stage < config.doublings; ++stage) {
        if (2 * (nodes.size() - 1) > config.max_resolution) break;
        std::vector<CPoint> finer;
        finer.reserve(2 * nodes.size());
        for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
            finer.push_back(nodes[k]);
            finer.push_back((nodes[k] + nodes[k + 1]) * 0.5);
        }
        finer.push_back(nodes.back());
        nodes = std::move(finer);
        shortener.run(nodes);
    }
    return with_uniform_params(std::move(nodes));
}

SampledPath unit_speed_reparametrize(const DomainSpec& domain, const SampledPath& path, std::size_t samples,
                                     const PathLengthOptions& opts) {
    path.validate();
    if (path.size() < 2) throw InvalidArgument("unit_speed_reparametrize: path needs at least two samples");
    const std::size_t out_n = samples == 0 ? path.resolution() : samples;
    std::vector<double> seg = segment_lengths(domain, path, Side::Upper, opts);
    std::vector<double> cum(seg.size() + 1, 0.0);
    for (std::size_t k = 0; k < seg.size(); ++k) cum[k + 1] = cum[k] + seg[k];
    const double total = cum.back();
    if (!(total > 0.0)) throw InvalidArgument("unit_speed_reparametrize: zero-length path");

    // locate arc length r inside segment j: coarse sub-grid, then bisection on the
    // adaptively integrated length (the metric blows up near the boundary)
    constexpr int kSub = 16;
    auto adaptive = [&](const CPoint& p, const CPoint& q) {
        SampledPath two;
        two.params = {0.0, 1.0};
        two.points = {p, q};
        return segment_lengths(domain, two, Side::Upper, opts)[0];
    };
    auto locate = [&](std::size_t j, double r) {
        const CPoint& a = path.points[j];
        const CPoint& b = path.points[j + 1];
        SampledPath sub;
        for (int q = 0; q <= kSub; ++q) {
            sub.params.push_back(static_cast<double>(q) / kSub);
            sub.points.push_back(a + (b - a) * (static_cast<double>(q) / kSub));
        }
        std::vector<double> pieces = segment_lengths(domain, sub, Side::Upper, opts);
        std::vector<double> g(kSub + 1, 0.0);
        for (int q = 0; q < kSub; ++q) g[q + 1] = g[q] + pieces[q];
        double scale = g[kSub] > 0.0 ? seg[j] / g[kSub] : 0.0;
        for (auto& v : g) v *= scale;
        int q = 0;
        while (q < kSub - 1 && g[q + 1] < r) ++q;
        const CPoint start = sub.points[q];
        double lo = static_cast<double>(q) / kSub, hi = static_cast<double>(q + 1) / kSub;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g[q] + scale * adaptive(start, a + (b - a) * mid) < r)
                lo = mid;
            else
                hi = mid;
        }
        return a + (b - a) * (0.5 * (lo + hi));
    };

    SampledPath out;
    out.params.reserve(out_n + 1);
    out.points.reserve(out_n + 1);
    std::size_t j = 0;
    for (std::size_t k = 0; k <= out_n; ++k) {
        double s = total * static_cast<double>(k) / static_cast<double>(out_n);
        out.params.push_back(s);
        if (k == 0) {
            out.points.push_back(path.points.front());
            continue;
        }
        if (k == out_n) {
            out.points.push_back(path.points.back());
            continue;
        }
        // left-continuous inverse: first segment whose cumulative end reaches s
        while (j + 1 < seg.size() && cum[j + 1] < s) ++j;
        out.points.push_back(locate(j, s - cum[j]));
    }
    return out;
}

AlmostGeodesicCertificate certify(const DomainSpec& domain, const SampledPath& path, double lambda_target,
                                  const CertifyOptions& opts) {
    path.validate();
    if (!(lambda_target >= 1.0)) throw InvalidArgument("certify: lambda must be >= 1");
    AlmostGeodesicCertificate cert;
    cert.lambda = lambda_target;
    const std::size_t n = path.size();
    for (const auto& p : path.points)
        if (!membership(domain, p)) throw OutsideDomain("certify: path sample outside domain");
    if (n < 2) return cert;

    std::vector<double> seg = segment_lengths(domain, path, Side::Upper, opts.path);
    std::vector<double> cum(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        cum[k + 1] = cum[k] + seg[k];
        double dt = path.params[k + 1] - path.params[k];
        cert.speed_max = std::max(cert.speed_max, seg[k] / dt);
    }
    if (cert.speed_max > lambda_target * (1.0 + opts.speed_tolerance)) {
        cert.lambda = cert.speed_max;
        cert.lambda_raised = true;
    }
    const double lambda = cert.lambda;

    double kappa = 0.0;
    cert.worst_lower_slack = -kInf;
    cert.worst_upper_slack = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            MetricEstimate k = distance_lower_only(domain, path.points[i], path.points[j]);
            double upper = std::min(k.upper, cum[j] - cum[i]);
            double dt = path.params[j] - path.params[i];
            double lo_slack = dt / lambda - k.lower;
            double up_slack = upper - lambda * dt;
            cert.worst_lower_slack = std::max(cert.worst_lower_slack, lo_slack);
            cert.worst_upper_slack = std::max(cert.worst_upper_slack, up_slack);
            double need = std::max(lo_slack, up_slack);
            if (need > kappa) {
                kappa = need;
                cert.worst_i = i;
                cert.worst_j = j;
            }
            ++cert.pairs_checked;
        }
    }
    cert.kappa = kappa;
    return cert;
}

namespace {

MetricEstimate sample_distance(const DomainSpec& domain, const CPoint& a, const CPoint& b) {
    MetricEstimate e = distance_lower_only(domain, a, b);
    if (!e.exact() && e.upper != 0.0) {
        double witness = segment_length(domain, a, b, Side::Upper, 16);
        if (witness < e.upper) {
            e.upper = witness;
            e.upper_rule = BoundRule::PathWitness;
        }
    }
    return e;
}

// Cells [t_{k-1}, t_k] on sample params with widths in [1/2, 1].
std::vector<std::size_t> partition_indices(const std::vector<double>& t) {
    std::vector<std::size_t> idx{0};
    const std::size_t last = t.size() - 1;
    while (idx.back() != last) {
        std::size_t i = idx.back();
        if (t[last] - t[i] <= 1.0 && t[last] - t[i] >= 0.5) {
            idx.push_back(last);
            break;
        }
        std::optional<std::size_t> pick;
        for (std::size_t j = i + 1; j <= last; ++j) {
            double w = t[j] - t[i];
            if (w > 1.0) break;
            double rest = t[last] - t[j];
            if (w >= 0.5 && (rest == 0.0 || rest >= 0.5)) pick = j;
        }
        if (!pick) throw InvalidArgument("quasi_to_almost: samples too sparse for a partition with cells in [1/2, 1]");
        idx.push_back(*pick);
    }
    return idx;
}

}  // namespace

SmoothingResult quasi_to_almost(const DomainSpec& domain, const SampledPath& qpath, double lambda, double kappa,
                                const SmoothingConfig& config) {
    qpath.validate();
    if (!(lambda >= 1.0) || !(kappa >= 0.0)) throw InvalidArgument("quasi_to_almost: need lambda >= 1, kappa >= 0");
    const std::size_t n = qpath.size();
    for (const auto& p : qpath.points)
        if (!membership(domain, p)) throw OutsideDomain("quasi_to_almost: sample outside domain");

    // declared constants must hold on every sampled pair (rejected only when certainly violated)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            MetricEstimate k = sample_distance(domain, qpath.points[i], qpath.points[j]);
            double dt = qpath.params[j] - qpath.params[i];
            if (k.lower > lambda * dt + kappa + config.check_tolerance ||
                k.upper < dt / lambda - kappa - config.check_tolerance)
                throw QuasiGeodesicViolation("quasi_to_almost: sample pair violates the declared constants", i, j);
        }

    SmoothingResult res;
    res.lambda0 = 2.0 * lambda + 2.0 * kappa + 2.0;
    res.kappa0 = 4.0 * lambda + 5.0 * kappa + 4.0;
    res.hausdorff_bound = 2.0 * lambda + 2.0 * kappa + 2.0;

    if (n == 1) {
        res.path = qpath;
        return res;
    }
    std::vector<std::size_t> cells;
    if (qpath.span() <= 0.5)
        cells = {0, n - 1};
    else
        cells = partition_indices(qpath.params);

    auto bridge = [&](const CPoint& a, const CPoint& b) -> SampledPath {
        if (a == b) {
            SampledPath c;
            for (std::size_t k = 0; k <= config.piece_samples; ++k) {
                c.params.push_back(static_cast<double>(k));
                c.points.push_back(a);
            }
            return c;
        }
        SampledPath raw = minimize_path(domain, a, b, config.geodesic);
        return unit_speed_reparametrize(domain, raw, config.piece_samples);
    };

    SampledPath s;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
        const std::size_t ia = cells[c], ib = cells[c + 1];
        SampledPath piece = bridge(qpath.points[ia], qpath.points[ib]);
        const double t0 = qpath.params[ia], t1 = qpath.params[ib];
        const double p0 = piece.params.front(), p1 = piece.params.back();
        for (std::size_t k = (c == 0 ? 0 : 1); k < piece.size(); ++k) {
            double u = (piece.params[k] - p0) / (p1 - p0);
            s.params.push_back(t0 + u * (t1 - t0));
            s.points.push_back(piece.points[k]);
        }
        ++res.pieces;
    }
    res.path = std::move(s);

    // two-sided sampled Hausdorff distance from distance upper bounds
    auto one_side = [&](const std::vector<CPoint>& from, const std::vector<CPoint>& to) {
        double worst = 0.0;
        for (const auto& a : from) {
            double best = kInf;
            for (const auto& b : to) best = std::min(best, sample_distance(domain, a, b).upper);
            worst = std::max(worst, best);
        }
        return worst;
    };
    res.hausdorff_measured =
        std::max(one_side(qpath.points, res.path.points), one_side(res.path.points, qpath.points));
    return res;
}

}  // namespace gold
