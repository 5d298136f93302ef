#include "goldilocks/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gold {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRayTol = 1e-13;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---- piecewise exact geometry -------------------------------------------------

bool inside(const BallPiece& b, const CPoint& p) { return (p - b.center).norm_sq() < b.radius * b.radius; }
bool inside(const HalfSpacePiece& h, const CPoint& p) { return real_dot(p, h.normal) < h.offset; }

double piece_distance(const BallPiece& b, const CPoint& p) { return b.radius - (p - b.center).norm(); }
double piece_distance(const HalfSpacePiece& h, const CPoint& p) {
    return (h.offset - real_dot(p, h.normal)) / h.normal.norm();
}

double piece_ray(const BallPiece& b, const CPoint& p, const CVector& u) {
    CVec w = p - b.center;
    double bb = real_dot(w, u);
    double c = w.norm_sq() - b.radius * b.radius;
    double disc = bb * bb - c;
    if (disc < 0.0) return 0.0;
    // stable root of t^2 + 2 bb t + c = 0 with t > 0
    double sq = std::sqrt(disc);
    if (bb >= 0.0) return (c < 0.0) ? -c / (bb + sq) : 0.0;
    return -bb + sq;
}

double piece_ray(const HalfSpacePiece& h, const CPoint& p, const CVector& u) {
    double rate = real_dot(u, h.normal);
    if (rate <= 0.0) return kInf;
    return std::max(0.0, (h.offset - real_dot(p, h.normal)) / rate);
}

// Radius of the largest disk z + r Delta u (u unit) inside the piece.
double piece_disk_radius(const BallPiece& b, const CPoint& z, const CVector& u) {
    CVec w = z - b.center;
    double a = std::abs(hermitian(w, u));
    double c = b.radius * b.radius - w.norm_sq();
    if (c <= 0.0) return 0.0;
    return c / (a + std::sqrt(a * a + c));
}

double piece_disk_radius(const HalfSpacePiece& h, const CPoint& z, const CVector& u) {
    double rate = std::abs(hermitian(u, h.normal));
    if (rate == 0.0) return kInf;
    return std::max(0.0, (h.offset - real_dot(z, h.normal)) / rate);
}

CPoint piece_nearest(const BallPiece& b, const CPoint& p) {
    CVec w = p - b.center;
    double n = w.norm();
    if (n == 0.0) return b.center + CVec::basis(p.dim(), 0) * b.radius;
    return b.center + w * (b.radius / n);
}

CPoint piece_nearest(const HalfSpacePiece& h, const CPoint& p) {
    double t = (h.offset - real_dot(p, h.normal)) / h.normal.norm_sq();
    return p + h.normal * t;
}

bool inside(const ConvexPieces& c, const CPoint& p) {
    for (const auto& b : c.balls)
        if (!inside(b, p)) return false;
    for (const auto& h : c.halfspaces)
        if (!inside(h, p)) return false;
    return true;
}

double pieces_distance(const ConvexPieces& c, const CPoint& p) {
    double d = kInf;
    for (const auto& b : c.balls) d = std::min(d, piece_distance(b, p));
    for (const auto& h : c.halfspaces) d = std::min(d, piece_distance(h, p));
    return d;
}

CPoint pieces_nearest(const ConvexPieces& c, const CPoint& p) {
    double d = kInf;
    CPoint best = p;
    for (const auto& b : c.balls)
        if (double db = piece_distance(b, p); db < d) {
            d = db;
            best = piece_nearest(b, p);
        }
    for (const auto& h : c.halfspaces)
        if (double dh = piece_distance(h, p); dh < d) {
            d = dh;
            best = piece_nearest(h, p);
        }
    return best;
}

double pieces_ray(const ConvexPieces& c, const CPoint& p, const CVector& u) {
    double t = kInf;
    for (const auto& b : c.balls) t = std::min(t, piece_ray(b, p, u));
    for (const auto& h : c.halfspaces) t = std::min(t, piece_ray(h, p, u));
    return t;
}

double pieces_disk_radius(const ConvexPieces& c, const CPoint& z, const CVector& u) {
    double r = kInf;
    for (const auto& b : c.balls) r = std::min(r, piece_disk_radius(b, z, u));
    for (const auto& h : c.halfspaces) r = std::min(r, piece_disk_radius(h, z, u));
    return r;
}

double pieces_enclosing_radius(const ConvexPieces& c) {
    double r = kInf;
    for (const auto& b : c.balls) r = std::min(r, b.center.norm() + b.radius);
    return r;
}

void validate_pieces(const ConvexPieces& c) {
    if (c.dim == 0) throw InvalidArgument("convex pieces need dim >= 1");
    if (c.balls.empty()) throw InvalidArgument("convex support needs at least one bounding ball piece");
    for (const auto& b : c.balls) {
        if (b.center.dim() != c.dim) throw DimensionMismatch("ball piece center dimension");
        if (!(b.radius > 0.0)) throw InvalidArgument("ball piece radius must be positive");
    }
    for (const auto& h : c.halfspaces) {
        if (h.normal.dim() != c.dim) throw DimensionMismatch("half-space normal dimension");
        if (h.normal.norm() == 0.0) throw InvalidArgument("half-space normal must be nonzero");
    }
}

// ---- egg / psi ------------------------------------------------------------------

double egg_value(const EggShape& e, const CPoint& p) {
    double s = 0.0;
    for (std::size_t j = 0; j < e.exponents.size(); ++j) s += std::pow(std::abs(p[j]), 2.0 * e.exponents[j]);
    return s;
}

double egg_moduli_value(const EggShape& e, std::span<const double> rho) {
    double s = 0.0;
    for (std::size_t j = 0; j < e.exponents.size(); ++j) s += std::pow(std::abs(rho[j]), 2.0 * e.exponents[j]);
    return s;
}

bool psi_inside(const PsiShape& s, const CPoint& p) {
    const std::size_t d = p.dim();
    double tn = 0.0;
    for (std::size_t j = 0; j + 1 < d; ++j) tn += std::norm(p[j]);
    tn = std::sqrt(tn);
    if (!(p[d - 1].imag() > DomainSpec::psi_extended(s.s, s.knee, tn))) return false;
    return inside(s.base, p);
}

// Generic exit distance for a convex (or merely bounded) membership predicate.
double generic_ray(const DomainSpec& dom, const CPoint& p, const CVector& u) {
    const double span = 2.0 * dom.enclosing_radius() + p.norm();
    auto in = [&](double t) { return membership(dom, p + u * t); };
    if (dom.convex()) return numeric::bisect_last_true(in, 0.0, span, kRayTol);
    // march, then bisect the first exit
    const int steps = 4096;
    double h = span / steps;
    double t = 0.0;
    while (t < span && in(t + h)) t += h;
    return numeric::bisect_last_true(in, t, t + h, kRayTol);
}

CVector real_direction(std::span<const double> w) { return CVec::from_real(w); }

struct Nearest {
    double distance;
    CPoint point;
};

Nearest egg_nearest(const DomainSpec& dom, const EggShape& e, const CPoint& p) {
    const std::size_t d = p.dim();
    std::vector<double> a(d);
    for (std::size_t j = 0; j < d; ++j) a[j] = std::abs(p[j]);
    auto moduli_ray = [&](std::span<const double> w) {
        auto in = [&](double t) {
            std::vector<double> q(d);
            for (std::size_t j = 0; j < d; ++j) q[j] = a[j] + t * w[j];
            return egg_moduli_value(e, q) < 1.0;
        };
        return numeric::bisect_last_true(in, 0.0, 2.0 * dom.enclosing_radius() + 1.0, kRayTol);
    };
    auto best = numeric::minimize_on_sphere(moduli_ray, d);
    CPoint xi(d);
    for (std::size_t j = 0; j < d; ++j) {
        double q = a[j] + best.value * best.argmin[j];
        Complex phase = a[j] > 0.0 ? p[j] / a[j] : Complex{1.0, 0.0};
        xi[j] = q * phase;
    }
    return {best.value, xi};
}

Nearest sphere_nearest(const DomainSpec& dom, const CPoint& p) {
    auto f = [&](std::span<const double> w) { return generic_ray(dom, p, real_direction(w)); };
    auto best = numeric::minimize_on_sphere(f, 2 * p.dim());
    return {best.value, p + real_direction(best.argmin) * best.value};
}

Nearest numeric_nearest(const DomainSpec& dom, const CPoint& p) {
    if (const auto* e = std::get_if<EggShape>(&dom.shape()); e && dom.convex()) return egg_nearest(dom, *e, p);
    return sphere_nearest(dom, p);
}

CPoint find_witness(const DomainSpec& dom, std::vector<CPoint> candidates) {
    const ConvexPieces* single = std::get_if<ConvexPieces>(&dom.shape());
    const IntersectionShape* pair = std::get_if<IntersectionShape>(&dom.shape());
    auto dist = [&](const CPoint& p) {
        if (single) return pieces_distance(*single, p);
        if (pair) return std::min(pieces_distance(pair->first, p), pieces_distance(pair->second, p));
        return 0.0;
    };
    double best = 0.0;
    std::optional<CPoint> out;
    for (const auto& c : candidates) {
        double dc = dist(c);
        if (dc > best) {
            best = dc;
            out = c;
        }
    }
    if (!out) throw InvalidArgument("could not locate an interior point of the convex support");
    return *out;
}

std::vector<CPoint> witness_candidates(const std::vector<const ConvexPieces*>& parts) {
    std::vector<CPoint> centers;
    for (const auto* c : parts)
        for (const auto& b : c->balls) centers.push_back(b.center);
    std::vector<CPoint> out = centers;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            for (double w : {0.25, 0.5, 0.75}) out.push_back(centers[i] * (1.0 - w) + centers[j] * w);
        }
    if (!centers.empty()) {
        CPoint mean = centers.front() * 0.0;
        for (const auto& c : centers) mean += c;
        out.push_back(mean * (1.0 / static_cast<double>(centers.size())));
    }
    return out;
}

}  // namespace

// ---- names ---------------------------------------------------------------------

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::UnitDisk: return "UnitDisk";
        case DomainKind::UnitBall: return "UnitBall";
        case DomainKind::Polydisk: return "Polydisk";
        case DomainKind::ConvexSupport: return "ConvexSupport";
        case DomainKind::Egg: return "Egg";
        case DomainKind::PsiSupported: return "PsiSupported";
        case DomainKind::Intersection: return "Intersection";
    }
    return "?";
}

DomainKind domain_kind_from_string(const std::string& name) {
    for (auto k : {DomainKind::UnitDisk, DomainKind::UnitBall, DomainKind::Polydisk, DomainKind::ConvexSupport,
                   DomainKind::Egg, DomainKind::PsiSupported, DomainKind::Intersection})
        if (to_string(k) == name) return k;
    throw InvalidArgument("unknown domain kind: " + name);
}

// ---- construction --------------------------------------------------------------

DomainSpec::DomainSpec(DomainKind kind, std::size_t dim, Shape shape)
    : kind_(kind), dim_(dim), shape_(std::move(shape)), witness_(dim) {}

DomainSpec DomainSpec::unit_disk() { return DomainSpec(DomainKind::UnitDisk, 1, UnitBallShape{1}); }

DomainSpec DomainSpec::unit_ball(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("dimension must be >= 1");
    return DomainSpec(DomainKind::UnitBall, dim, UnitBallShape{dim});
}

DomainSpec DomainSpec::polydisk(std::vector<double> radii) {
    if (radii.empty()) throw InvalidArgument("polydisk needs at least one radius");
    double r2 = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw InvalidArgument("polydisk radii must be positive");
        r2 += r * r;
    }
    const std::size_t dim = radii.size();
    DomainSpec d(DomainKind::Polydisk, dim, PolydiskShape{std::move(radii)});
    d.enclosing_radius_ = std::sqrt(r2);
    return d;
}

DomainSpec DomainSpec::convex_support(ConvexPieces pieces) {
    validate_pieces(pieces);
    const std::size_t dim = pieces.dim;
    double r = pieces_enclosing_radius(pieces);
    auto cands = witness_candidates({&pieces});
    DomainSpec d(DomainKind::ConvexSupport, dim, std::move(pieces));
    d.enclosing_radius_ = r;
    d.witness_ = find_witness(d, std::move(cands));
    return d;
}

DomainSpec DomainSpec::egg(std::vector<double> exponents) {
    if (exponents.empty()) throw InvalidArgument("egg needs at least one exponent");
    bool convex = true;
    for (double m : exponents) {
        if (!(m > 0.0)) throw InvalidArgument("egg exponents must be positive");
        convex = convex && m >= 0.5;
    }
    const std::size_t dim = exponents.size();
    DomainSpec d(DomainKind::Egg, dim, EggShape{std::move(exponents)});
    d.convex_ = convex;
    d.enclosing_radius_ = std::sqrt(static_cast<double>(dim));
    return d;
}

double DomainSpec::psi_inflection_radius(double s) { return std::pow(s / (s + 1.0), 1.0 / s); }

double DomainSpec::psi_envelope(double s, double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-std::pow(t, -s));
}

double DomainSpec::psi_envelope_inverse(double s, double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return kInf;
    return std::pow(std::log(1.0 / y), -1.0 / s);
}

double DomainSpec::psi_extended(double s, double knee, double t) {
    if (t <= knee) return psi_envelope(s, t);
    const double y = psi_envelope(s, knee);
    const double slope = s * std::pow(knee, -s - 1.0) * y;
    return y + slope * (t - knee);
}

ConvexPieces DomainSpec::psi_default_base(std::size_t dim) {
    // contains the origin, so near 0 the boundary is the envelope itself
    ConvexPieces base;
    base.dim = dim;
    base.balls.push_back({CVec::basis(dim, dim - 1) * Complex{0.0, 0.5}, 0.8});
    return base;
}

DomainSpec DomainSpec::psi_supported(ConvexPieces base, double s, std::optional<double> knee) {
    if (!(s > 0.0)) throw InvalidArgument("psi exponent s must be positive");
    if (base.dim < 2) throw InvalidArgument("psi-supported domains need dim >= 2");
    validate_pieces(base);
    const double inflection = psi_inflection_radius(s);
    const double a = knee.value_or(std::min(inflection, 0.5));
    if (!(a > 0.0)) throw InvalidArgument("psi knee must be positive");
    const std::size_t dim = base.dim;
    const double r = pieces_enclosing_radius(base);
    DomainSpec d(DomainKind::PsiSupported, dim, PsiShape{std::move(base), s, a});
    d.convex_ = a <= inflection;
    d.enclosing_radius_ = r;
    // witness on the imaginary z_d axis: midpoint of the membership interval
    CVec e = CVec::basis(dim, dim - 1) * Complex{0.0, 1.0};
    double lo = -1.0, hi = -1.0;
    const int n = 400;
    for (int k = 1; k < n; ++k) {
        double t = r * k / n;
        if (membership(d, e * t)) {
            if (lo < 0.0) lo = t;
            hi = t;
        }
    }
    if (lo < 0.0) throw InvalidArgument("psi-supported domain has no interior point on the z_d axis");
    d.witness_ = e * (0.5 * (lo + hi));
    return d;
}

DomainSpec DomainSpec::intersection(ConvexPieces first, ConvexPieces second) {
    validate_pieces(first);
    validate_pieces(second);
    if (first.dim != second.dim) throw DimensionMismatch("intersection parts differ in dimension");
    const std::size_t dim = first.dim;
    double r = std::min(pieces_enclosing_radius(first), pieces_enclosing_radius(second));
    auto cands = witness_candidates({&first, &second});
    DomainSpec d(DomainKind::Intersection, dim, IntersectionShape{std::move(first), std::move(second)});
    d.enclosing_radius_ = r;
    d.witness_ = find_witness(d, std::move(cands));
    return d;
}

bool DomainSpec::has_exact_metric() const {
    return kind_ == DomainKind::UnitDisk || kind_ == DomainKind::UnitBall || kind_ == DomainKind::Polydisk;
}

bool DomainSpec::has_exact_geometry() const {
    return has_exact_metric() || kind_ == DomainKind::ConvexSupport || kind_ == DomainKind::Intersection;
}

// ---- queries --------------------------------------------------------------------

void check_dim(const DomainSpec& domain, const CVec& p) {
    if (p.dim() != domain.dim())
        throw DimensionMismatch("expected dimension " + std::to_string(domain.dim()) + ", got " +
                                std::to_string(p.dim()));
}

bool membership(const DomainSpec& domain, const CPoint& p) {
    check_dim(domain, p);
    if (!p.finite()) return false;
    return std::visit(overloaded{
                          [&](const UnitBallShape&) { return p.norm_sq() < 1.0; },
                          [&](const PolydiskShape& s) {
                              for (std::size_t j = 0; j < s.radii.size(); ++j)
                                  if (std::abs(p[j]) >= s.radii[j]) return false;
                              return true;
                          },
                          [&](const ConvexPieces& c) { return inside(c, p); },
                          [&](const EggShape& e) { return egg_value(e, p) < 1.0; },
                          [&](const PsiShape& s) { return psi_inside(s, p); },
                          [&](const IntersectionShape& s) { return inside(s.first, p) && inside(s.second, p); },
                      },
                      domain.shape());
}

double boundary_distance(const DomainSpec& domain, const CPoint& p) {
    if (!membership(domain, p)) throw OutsideDomain("boundary_distance: point outside domain");
    return std::visit(overloaded{
                          [&](const UnitBallShape&) {
                              double ns = p.norm_sq();
                              return (1.0 - ns) / (1.0 + std::sqrt(ns));
                          },
                          [&](const PolydiskShape& s) {
                              double d = kInf;
                              for (std::size_t j = 0; j < s.radii.size(); ++j)
                                  d = std::min(d, s.radii[j] - std::abs(p[j]));
                              return d;
                          },
                          [&](const ConvexPieces& c) { return pieces_distance(c, p); },
                          [&](const EggShape&) { return numeric_nearest(domain, p).distance; },
                          [&](const PsiShape&) { return numeric_nearest(domain, p).distance; },
                          [&](const IntersectionShape& s) {
                              return std::min(pieces_distance(s.first, p), pieces_distance(s.second, p));
                          },
                      },
                      domain.shape());
}

CPoint nearest_boundary_point(const DomainSpec& domain, const CPoint& p) {
    if (!membership(domain, p)) throw OutsideDomain("nearest_boundary_point: point outside domain");
    return std::visit(overloaded{
                          [&](const UnitBallShape&) { return piece_nearest(BallPiece{CVec(p.dim()), 1.0}, p); },
                          [&](const PolydiskShape& s) {
                              std::size_t jb = 0;
                              double d = kInf;
                              for (std::size_t j = 0; j < s.radii.size(); ++j)
                                  if (s.radii[j] - std::abs(p[j]) < d) {
                                      d = s.radii[j] - std::abs(p[j]);
                                      jb = j;
                                  }
                              CPoint xi = p;
                              double a = std::abs(p[jb]);
                              xi[jb] = a > 0.0 ? p[jb] * (s.radii[jb] / a) : Complex{s.radii[jb], 0.0};
                              return xi;
                          },
                          [&](const ConvexPieces& c) { return pieces_nearest(c, p); },
                          [&](const EggShape&) { return numeric_nearest(domain, p).point; },
                          [&](const PsiShape&) { return numeric_nearest(domain, p).point; },
                          [&](const IntersectionShape& s) {
                              return pieces_distance(s.first, p) <= pieces_distance(s.second, p)
                                         ? pieces_nearest(s.first, p)
                                         : pieces_nearest(s.second, p);
                          },
                      },
                      domain.shape());
}

double ray_to_boundary(const DomainSpec& domain, const CPoint& p, const CVector& direction) {
    check_dim(domain, direction);
    if (direction.norm() == 0.0) throw InvalidArgument("ray_to_boundary: zero direction");
    if (!membership(domain, p)) throw OutsideDomain("ray_to_boundary: point outside domain");
    const CVector u = normalized(direction);
    return std::visit(overloaded{
                          [&](const UnitBallShape&) { return piece_ray(BallPiece{CVec(p.dim()), 1.0}, p, u); },
                          [&](const PolydiskShape& s) {
                              double t = kInf;
                              for (std::size_t j = 0; j < s.radii.size(); ++j) {
                                  double uu = std::norm(u[j]);
                                  if (uu == 0.0) continue;
                                  double b = (p[j] * std::conj(u[j])).real();
                                  double c = s.radii[j] * s.radii[j] - std::norm(p[j]);
                                  t = std::min(t, (-b + std::sqrt(b * b + uu * c)) / uu);
                              }
                              return t;
                          },
                          [&](const ConvexPieces& c) { return pieces_ray(c, p, u); },
                          [&](const EggShape&) { return generic_ray(domain, p, u); },
                          [&](const PsiShape&) { return generic_ray(domain, p, u); },
                          [&](const IntersectionShape& s) {
                              return std::min(pieces_ray(s.first, p, u), pieces_ray(s.second, p, u));
                          },
                      },
                      domain.shape());
}

namespace {

std::optional<double> analytic_disk_radius(const DomainSpec& domain, const CPoint& z, const CVector& u) {
    return std::visit(overloaded{
                          [&](const UnitBallShape&) -> std::optional<double> {
                              return piece_disk_radius(BallPiece{CVec(z.dim()), 1.0}, z, u);
                          },
                          [&](const PolydiskShape& s) -> std::optional<double> {
                              double r = kInf;
                              for (std::size_t j = 0; j < s.radii.size(); ++j) {
                                  double a = std::abs(u[j]);
                                  if (a > 0.0) r = std::min(r, (s.radii[j] - std::abs(z[j])) / a);
                              }
                              return r;
                          },
                          [&](const ConvexPieces& c) -> std::optional<double> { return pieces_disk_radius(c, z, u); },
                          [&](const EggShape&) -> std::optional<double> { return std::nullopt; },
                          [&](const PsiShape&) -> std::optional<double> { return std::nullopt; },
                          [&](const IntersectionShape& s) -> std::optional<double> {
                              return std::min(pieces_disk_radius(s.first, z, u), pieces_disk_radius(s.second, z, u));
                          },
                      },
                      domain.shape());
}

// For a convex domain the disk z + r Delta u fits iff every ray z + t e^{i theta} u
// reaches t >= r, so the radius is the minimum exit distance over the circle of
// directions. Sampled with doubling until the minimum stabilizes twice, then refined.
RadiusBounds sampled_disk_radius(const DomainSpec& domain, const CPoint& z, const CVector& u) {
    auto exit_at = [&](double theta) {
        return ray_to_boundary(domain, z, u * std::polar(1.0, theta));
    };
    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t n = 256;
    double prev = kInf, best = kInf, best_theta = 0.0;
    int stable = 0;
    while (true) {
        best = kInf;
        for (std::size_t k = 0; k < n; ++k) {
            double th = two_pi * static_cast<double>(k) / static_cast<double>(n);
            double t = exit_at(th);
            if (t < best) {
                best = t;
                best_theta = th;
            }
        }
        if (std::abs(best - prev) <= 1e-3 * best)
            ++stable;
        else
            stable = 0;
        if (stable >= 2 || n >= 4096) break;
        prev = best;
        n *= 2;
    }
    const double h = two_pi / static_cast<double>(n);
    double th = numeric::golden_min(exit_at, best_theta - h, best_theta + h, 1e-10);
    double refined = std::min(best, exit_at(th));
    // refined is attained by an actual direction, so it bounds the radius from above;
    // the lower side allows for the residual angular error of the refinement
    return {refined * (1.0 - 1e-9) - 2.0 * kRayTol, refined};
}

}  // namespace

RadiusBounds disk_radius_bounds(const DomainSpec& domain, const CPoint& z, const CVector& v, DiskRadiusMethod method) {
    check_dim(domain, v);
    if (v.norm() == 0.0) throw InvalidArgument("disk_radius_in_complex_line: zero direction");
    if (!membership(domain, z)) throw OutsideDomain("disk_radius_in_complex_line: point outside domain");
    const CVector u = normalized(v);
    if (method == DiskRadiusMethod::Auto) {
        if (auto r = analytic_disk_radius(domain, z, u)) return {*r, *r};
    }
    if (!domain.convex())
        throw Unsupported("disk radius needs a convex domain or a closed-form containment rule");
    return sampled_disk_radius(domain, z, u);
}

double disk_radius_in_complex_line(const DomainSpec& domain, const CPoint& z, const CVector& v,
                                   DiskRadiusMethod method) {
    return disk_radius_bounds(domain, z, v, method).upper;
}

// ---- sampling helpers ----------------------------------------------------------

CPoint point_at_boundary_distance(const DomainSpec& domain, const CVector& direction, double delta) {
    const CPoint& c = domain.interior_witness();
    const CVector u = normalized(direction);
    if (boundary_distance(domain, c) < delta)
        throw InvalidArgument("requested boundary distance exceeds the depth of the interior witness");
    double tmax = ray_to_boundary(domain, c, u);
    auto deep_enough = [&](double s) {
        CPoint q = c + u * s;
        return membership(domain, q) && boundary_distance(domain, q) >= delta;
    };
    double s = numeric::bisect_last_true(deep_enough, 0.0, tmax, 1e-15 * std::max(1.0, tmax));
    return c + u * s;
}

std::vector<CPoint> sample_interior(const DomainSpec& domain, std::size_t count, Rng& rng) {
    // rejection from the bounding box of the enclosing ball
    const std::size_t n = 2 * domain.dim();
    const double R = domain.enclosing_radius();
    std::vector<double> half(n, R);
    std::vector<CPoint> out;
    out.reserve(count);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> xs(n);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 1000 * count + 10000) throw Error("sample_interior: rejection sampling failed");
        for (std::size_t i = 0; i < n; ++i) xs[i] = half[i] * unif(rng);
        CPoint p = CVec::from_real(xs);
        if (p.norm() < R && membership(domain, p)) out.push_back(std::move(p));
    }
    return out;
}

// ---- interior cone condition --------------------------------------------------

namespace {

bool cone_cap_inside(const DomainSpec& domain, const CPoint& vertex, const std::vector<double>& axis,
                     double aperture, double reach, std::size_t samples) {
    const std::size_t n = axis.size();
    const double half = 0.5 * aperture;
    Rng rng(0xC0DEULL + samples);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t k = 0; k < samples; ++k) {
        // direction at angle phi from the axis; half the samples on the lateral surface
        auto w = numeric::random_unit(rng, n);
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += w[i] * axis[i];
        std::vector<double> t(n);
        double tn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = w[i] - c * axis[i];
            tn += t[i] * t[i];
        }
        tn = std::sqrt(tn);
        if (tn < 1e-12) continue;
        double phi = (k % 2 == 0) ? half * (1.0 - 1e-9) : half * unif(rng);
        // radial position: geometric near the vertex, plus the cap itself
        double rho = (k % 5 == 0) ? reach * (1.0 - 1e-9) : reach * std::pow(1e-4, unif(rng));
        std::vector<double> dir(n);
        for (std::size_t i = 0; i < n; ++i) dir[i] = std::cos(phi) * axis[i] + std::sin(phi) * t[i] / tn;
        CPoint q = vertex + CVec::from_real(dir) * rho;
        if (!membership(domain, q)) return false;
    }
    return true;
}

}  // namespace

ConeReport cone_condition_check(const DomainSpec& domain, const std::vector<CPoint>& samples,
                                const ConeCheckConfig& config) {
    std::vector<double> apertures = config.apertures;
    if (apertures.empty())
        for (double th = 3.0; th > 0.05; th -= 0.05) apertures.push_back(th);
    std::sort(apertures.begin(), apertures.end(), std::greater<>());

    ConeReport report;
    report.reach = config.reach;
    report.all_verified = true;
    report.min_aperture = kInf;
    for (const auto& x : samples) {
        ConeSample rec{x, std::nullopt};
        CPoint xi0 = nearest_boundary_point(domain, x);
        CVec normal = x - xi0;
        if (normal.norm() == 0.0) {
            report.samples.push_back(rec);
            report.all_verified = false;
            continue;
        }
        std::vector<double> n0 = normalized(normal).to_real();
        const std::size_t n = n0.size();

        // candidate axes: the inward normal and small deterministic perturbations
        std::vector<std::vector<double>> axes{n0};
        Rng rng(0xA415ULL);
        for (std::size_t k = 1; k < config.axis_perturbations; ++k) {
            auto w = numeric::random_unit(rng, n);
            std::vector<double> a(n);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = n0[i] + 0.1 * w[i];
                s += a[i] * a[i];
            }
            for (auto& ai : a) ai /= std::sqrt(s);
            axes.push_back(std::move(a));
        }

        for (const auto& axis : axes) {
            CVec v = CVec::from_real(axis);
            double back = ray_to_boundary(domain, x, v * -1.0);
            CPoint vertex = x - v * back;
            for (double th : apertures) {
                if (rec.cone && th <= rec.cone->aperture) break;
                if (cone_cap_inside(domain, vertex, axis, th, config.reach, config.cap_samples)) {
                    rec.cone = ConeSpec{vertex, v, th, config.reach};
                    break;
                }
            }
        }
        if (rec.cone)
            report.min_aperture = std::min(report.min_aperture, rec.cone->aperture);
        else
            report.all_verified = false;
        report.samples.push_back(std::move(rec));
    }
    if (!report.all_verified || report.samples.empty()) report.min_aperture = 0.0;
    return report;
}

}  // namespace gold
