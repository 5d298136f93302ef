#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goldilocks/geodesics.hpp"
#include "goldilocks/goldilocks.hpp"

namespace gold {

enum class ApproachMode { Radial, Tangential, Custom };
std::string to_string(ApproachMode m);

struct ApproachSequence {
    CPoint target;
    std::vector<CPoint> points;
    ApproachMode mode = ApproachMode::Custom;

    // Straight approach from the direction of the interior witness: |x_n - target| = deltas[n].
    static ApproachSequence radial(const DomainSpec& domain, const CPoint& target, const std::vector<double>& deltas);
    // x_n = (1 - delta) e^{i sqrt(delta)} target; needs a unit target (ball-like domains).
    static ApproachSequence tangential(const DomainSpec& domain, const CPoint& target, const std::vector<double>& deltas);
    static ApproachSequence custom(const DomainSpec& domain, const CPoint& target, std::vector<CPoint> points);

    // Interior points, strictly decreasing Euclidean distance to the target.
    void validate(const DomainSpec& domain) const;
};

// Running-sup stabilization: over the last `fraction` of the series the running max moves
// by less than `rel_tol` relative (absolute when the max is zero).
bool stabilizes(const std::vector<double>& values, double fraction = 0.25, double rel_tol = 0.01);

struct VisibilityConfig {
    double lambda = 1.0;
    double kappa = 0.5;  // declared constants every recorded path must satisfy
    std::size_t path_samples = 64;
    GeodesicConfig geodesic{.initial_resolution = 16, .doublings = 1};
    double stabilization_fraction = 0.25;
    double stabilization_tol = 0.01;
    double speed_tolerance = 0.05;  // relative slack on the shell speed bound
    std::size_t shell_levels = 12;
    ShellSamplerConfig sampler{.directions = 8};
    unsigned threads = 1;
};

struct VisibilityTrial {
    std::size_t index = 0;
    CPoint x;
    CPoint y;
    bool ok = false;
    std::string failure;
    AlmostGeodesicCertificate certificate;
    bool certified = false;          // certificate within the declared (lambda, kappa)
    double max_delta = 0.0;          // along the path
    double min_delta = 0.0;
    double min_distance = 0.0;       // min_t K_upper(o, sigma(t))
    CPoint closest;
    std::size_t closest_index = 0;
    double speed_ratio = 0.0;        // max sampled |sigma'| / (lambda * M(delta))
    bool speed_ok = false;
    double midpoint_defect = 0.0;    // K(a,m) + K(m,b) - K(a,b) at the closest sample
    SampledPath path;
};

struct VisibilityReport {
    std::vector<VisibilityTrial> trials;
    std::vector<double> running_sup;  // over successful trials, in trial order
    double sup_min_distance = 0.0;
    bool stabilized = false;
    std::string verdict;  // "visible" | "not visible"
    std::vector<ShellEstimate> shell;
    std::string note;
};

VisibilityReport visibility_experiment(const DomainSpec& domain, const ApproachSequence& seq_xi,
                                       const ApproachSequence& seq_eta, const CPoint& o,
                                       const VisibilityConfig& config = {});

MetricEstimate gromov_product(const DomainSpec& domain, const CPoint& x, const CPoint& y, const CPoint& o,
                              const DistanceOptions& opts = {});

struct GromovReport {
    std::vector<std::vector<MetricEstimate>> table;  // table[n][m] = (x_n | y_m)_o
    std::vector<double> running_max;                 // max over n, m <= N of the upper side
    bool stabilized = false;
    std::string verdict;  // "bounded" | "unbounded"
};

struct GromovConfig {
    double stabilization_fraction = 0.25;
    double stabilization_tol = 0.01;
    DistanceOptions distance;
};

GromovReport gromov_boundedness_experiment(const DomainSpec& domain, const ApproachSequence& seq_xi,
                                           const ApproachSequence& seq_eta, const CPoint& o,
                                           const GromovConfig& config = {});

}  // namespace gold
