#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goldilocks/domains.hpp"
#include "goldilocks/kobayashi.hpp"

namespace gold {

struct EmptyShell : Error {
    using Error::Error;
};

struct ShellSamplerConfig {
    std::size_t directions = 24;           // random rays from the interior witness
    bool axis_directions = true;           // also the 4d rays along +-e_j, +-i e_j
    std::vector<double> strata{1.0, 0.5};  // sample at delta = r * stratum
    std::size_t random_tangents = 4;       // extra unit directions per point
    std::uint64_t seed = 7;
    unsigned threads = 1;
};

// Enclosure of M(r) = sup { 1/k(x; v) : delta(x) <= r, |v| = 1 }.
// `upper` comes from metric lower bounds and over-estimates the sampled sup;
// `lower` comes from metric upper bounds and is attained by a sampled (x, v).
struct ShellEstimate {
    double r = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    BoundRule upper_rule = BoundRule::None;  // metric rule behind `upper`
    CPoint argmax;
    CVector argmax_direction;
    std::size_t points = 0;
};

ShellEstimate estimate_M(const DomainSpec& domain, double r, const ShellSamplerConfig& config = {});

// Geometric grid r_max * q^k, k = 0..count-1, returned in increasing order.
std::vector<double> geometric_grid(double r_min, double r_max, std::size_t count);

enum class Verdict { Converges, Diverges, Inconclusive };
std::string to_string(Verdict v);

struct TailFit {
    std::string family;  // "power": a r^s,  "log": a (log 1/r)^{-p}
    double a = 0.0;
    double exponent = 0.0;  // s or p
    double rss = 0.0;
    double aic = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double tail_integral = 0.0;  // integral of M/r over (0, r_min]; infinite when divergent
    bool ok = false;
};

struct Condition1Config {
    double margin = 0.1;          // exponent margin around the convergence threshold
    double decisive_aic = 10.0;   // AIC gap that lets the better family decide alone
    double tail_fraction = 0.5;   // fraction of the grid (smallest r) used for the tail fit
};

struct Condition1Result {
    std::vector<double> rs;
    std::vector<double> ms;
    double grid_integral = 0.0;   // piecewise power-law quadrature over [r_min, r_max]
    double integral = 0.0;        // grid + tail of the chosen family
    TailFit power;
    TailFit log;
    std::string chosen;
    Verdict verdict = Verdict::Inconclusive;
    std::string diagnostics;
};

// From a precomputed table (r increasing, M > 0).
Condition1Result condition1_from_table(std::vector<double> rs, std::vector<double> ms, const Condition1Config& config = {});
// Estimates the shell table on `r_grid` (upper side) first.
Condition1Result condition1_test(const DomainSpec& domain, const std::vector<double>& r_grid,
                                 const ShellSamplerConfig& sampler = {}, const Condition1Config& config = {},
                                 std::vector<ShellEstimate>* shell_table = nullptr);

struct Condition2Config {
    double delta_max = 0.5;   // clipped to the depth of the interior witness
    double delta_min = 1e-4;
    std::size_t levels = 13;
    std::size_t directions = 4;
    std::uint64_t seed = 11;
    unsigned threads = 1;
};

struct Condition2Sample {
    CPoint point;
    double delta = 0.0;
    double k_upper = 0.0;
    double residual = 0.0;  // after inflation; never positive
};

struct Condition2Result {
    CPoint base;
    double C = 0.0;         // inflated intercept
    double C_fit = 0.0;     // least-squares intercept
    double alpha = 0.0;
    double max_positive_residual = 0.0;  // after inflation
    double rss = 0.0;
    std::vector<Condition2Sample> samples;
};

Condition2Result condition2_fit(const DomainSpec& domain, const CPoint& x0, const Condition2Config& config = {});
// Fit on caller-supplied interior samples.
Condition2Result condition2_fit(const DomainSpec& domain, const CPoint& x0, const std::vector<CPoint>& samples,
                                unsigned threads = 1);

struct PsiThreshold {
    double s = 0.0;
    double exponent = 0.0;  // exponent of u in the integrand after u = log 1/t
    Verdict verdict = Verdict::Inconclusive;
};

PsiThreshold psi_threshold_test(double s);

struct ConeLogBound {
    double C = 0.0;
    double alpha = 0.0;         // cone-map exponent
    double slope = 0.0;         // guaranteed coefficient alpha / 2
    double R = 0.0;             // scale of the cone map
    double C1 = 0.0;            // max K_upper(q, x0) over the cone-map centres q
    double aperture = 0.0;
    double reach = 0.0;
};

struct ConeLogConfig {
    std::size_t circle_samples = 720;
    double alpha_step = 0.01;
    std::size_t max_steps = 2000;
};

ConeLogBound cone_log_bound(const DomainSpec& domain, const std::optional<ConeReport>& report, const CPoint& x0,
                            const ConeLogConfig& config = {});

// max over samples and a small frame of directions v of r(x; v) / delta(x)^{1/m};
// bounded for m-convex domains.
double convexity_order_ratio(const DomainSpec& domain, const std::vector<CPoint>& samples, double m);

struct GoldilocksConfig {
    std::vector<double> r_grid;        // default: 12 geometric levels on [1e-3, 0.5]
    ShellSamplerConfig sampler;
    Condition1Config condition1;
    Condition2Config condition2;
    ConeCheckConfig cone;
    std::size_t cone_points = 6;
    double cone_delta = 0.05;
};

struct GoldilocksReport {
    std::vector<ShellEstimate> shell_table;
    Condition1Result condition1;
    Condition2Result condition2;
    ConeReport cone;
    std::optional<ConeLogBound> cone_bound;
    bool shell_monotone = true;
};

GoldilocksReport goldilocks_report(const DomainSpec& domain, const GoldilocksConfig& config = {});

}  // namespace gold
