#pragma once

#include <limits>
#include <string>
#include <vector>

#include "goldilocks/domains.hpp"
#include "goldilocks/path.hpp"

namespace gold {

enum class BoundRule {
    None,
    ExactFormula,
    GrahamLower,
    GrahamUpper,
    EnclosingBall,
    InscribedBall,
    AssumedFiniteType,
    PathWitness,
    EuclideanLower,
};

std::string to_string(BoundRule rule);

// Certified enclosure lower <= value <= upper, with the rule that produced each side.
struct MetricEstimate {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    BoundRule lower_rule = BoundRule::None;
    BoundRule upper_rule = BoundRule::None;

    bool exact() const { return lower_rule == BoundRule::ExactFormula && upper_rule == BoundRule::ExactFormula; }
    double width() const { return upper - lower; }
    double mid() const { return 0.5 * (lower + upper); }

    static MetricEstimate exact_value(double v) {
        return {v, v, BoundRule::ExactFormula, BoundRule::ExactFormula};
    }
};

enum class Side { Lower, Upper };

// Closed forms on the model domains (normalization k_Delta(z; 1) = 1 / (1 - |z|^2)).
namespace model {
double disk_metric(Complex z, Complex v);
double disk_distance(Complex z, Complex w);
double ball_metric(const CPoint& z, const CVector& v);
double ball_distance(const CPoint& z, const CPoint& w);
// Ball of given center and radius.
double ball_metric(const CPoint& center, double radius, const CPoint& z, const CVector& v);
double ball_distance(const CPoint& center, double radius, const CPoint& z, const CPoint& w);
}  // namespace model

// c1 with k(x; v) >= c1 |v| everywhere, from the enclosing ball B_R(0): c1 = 1/R.
double euclidean_lower_constant(const DomainSpec& domain);

MetricEstimate infinitesimal_metric(const DomainSpec& domain, const CPoint& z, const CVector& v);

struct PathLengthOptions {
    double tolerance = 1e-10;   // relative Gauss-Kronrod error per panel
    int max_refinements = 30;   // bisection depth
};

// Length of the piecewise-linear path by adaptive Gauss-Kronrod quadrature per segment.
double path_length(const DomainSpec& domain, const SampledPath& path, Side side, const PathLengthOptions& opts = {});
// Same, per segment: lengths[k] is the length of segment k -> k+1.
std::vector<double> segment_lengths(const DomainSpec& domain, const SampledPath& path, Side side,
                                    const PathLengthOptions& opts = {});
// Length of one straight segment by a fixed Gauss rule on `subdivisions` panels graded
// toward both endpoints. Smooth in the endpoints, which the path optimizer relies on.
double segment_length(const DomainSpec& domain, const CPoint& a, const CPoint& b, Side side, int subdivisions);

struct DistanceOptions {
    bool straight_witness = true;   // integrate the upper metric along the chord when not exact
    bool optimize_path = false;     // also run the curve-shortening solver for a better witness
    PathLengthOptions path;
};

MetricEstimate distance(const DomainSpec& domain, const CPoint& x, const CPoint& y, const DistanceOptions& opts = {});

// Lower bound only (no path integration): exact when available, otherwise inclusion bounds.
MetricEstimate distance_lower_only(const DomainSpec& domain, const CPoint& x, const CPoint& y);

}  // namespace gold
