#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "goldilocks/corpus.hpp"
#include "goldilocks/domains.hpp"
#include "goldilocks/kobayashi.hpp"

namespace testing {

using namespace gold;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

// Uniform point in the disk of radius `rmax`.
inline Complex disk_point(Rng& rng, double rmax = 0.95) {
    double r = rmax * std::sqrt(uniform(rng, 0.0, 1.0));
    double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return std::polar(r, t);
}

// Point of the d-ball with norm below rmax.
inline CPoint ball_point(Rng& rng, std::size_t d, double rmax = 0.95) {
    CVec u = CVec::from_real(numeric::random_unit(rng, 2 * d));
    double r = rmax * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(2 * d));
    return u * r;
}

inline CVector unit_vector(Rng& rng, std::size_t d) { return CVec::from_real(numeric::random_unit(rng, 2 * d)); }

// Random nonzero vector with norm spread over a few decades.
inline CVector any_vector(Rng& rng, std::size_t d) {
    return unit_vector(rng, d) * std::pow(10.0, uniform(rng, -2.0, 2.0));
}

// The unit ball of C^d, but handled through the generic convex machinery.
inline DomainSpec ball_as_convex(std::size_t d) {
    ConvexPieces p;
    p.dim = d;
    p.balls.push_back({CVec(d), 1.0});
    return DomainSpec::convex_support(p);
}

inline ConvexPieces ball_piece(CVec center, double radius) {
    ConvexPieces p;
    p.dim = center.dim();
    p.balls.push_back({std::move(center), radius});
    return p;
}

// Largest disk radius in the complex line z + C u inside the ball |w - c| < rho.
inline double ball_line_radius(const CPoint& c, double rho, const CPoint& z, const CVector& v) {
    CVec u = normalized(v);
    CVec w = z - c;
    double a = std::abs(hermitian(w, u));
    return -a + std::sqrt(a * a + rho * rho - w.norm_sq());
}

inline std::vector<DomainSpec> cheap_domains() {
    std::vector<DomainSpec> out;
    for (const char* name : {"UnitDisk", "UnitBall2", "UnitBall3", "Polydisk2", "LensBalls2", "BallPair2"})
        out.push_back(corpus_domain(name).domain);
    return out;
}

}  // namespace testing
