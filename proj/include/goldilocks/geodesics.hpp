#pragma once

#include <cstdint>
#include <optional>

#include "goldilocks/kobayashi.hpp"
#include "goldilocks/path.hpp"

namespace gold {

struct GeodesicConfig {
    std::size_t initial_resolution = 16;
    std::size_t max_resolution = 4096;
    int doublings = 1;             // resolution doublings after the first convergence
    double rel_tol = 1e-4;         // relative improvement regarded as a stall
    int stall_sweeps = 5;          // consecutive stalled sweeps that end a stage
    int max_sweeps = 2000;
    int segment_subdivisions = 8;  // midpoint subdivisions per segment inside the optimizer
    std::uint64_t seed = 1;
};

struct NoInteriorPath : Error {
    using Error::Error;
};

// Discrete curve shortening between two interior points, starting from the chord.
SampledPath minimize_path(const DomainSpec& domain, const CPoint& x, const CPoint& y, const GeodesicConfig& config = {});

// Resample at equal Kobayashi arc length (upper-bound lengths); params become arc length.
// samples == 0 keeps the input resolution.
SampledPath unit_speed_reparametrize(const DomainSpec& domain, const SampledPath& path, std::size_t samples = 0,
                                     const PathLengthOptions& opts = {});

struct AlmostGeodesicCertificate {
    double lambda = 1.0;
    double kappa = 0.0;
    double speed_max = 0.0;
    bool lambda_raised = false;    // sampled speed exceeded the target beyond tolerance
    // worst pair for the distance comparison
    std::size_t worst_i = 0;
    std::size_t worst_j = 0;
    double worst_lower_slack = 0.0;  // |t-s|/lambda - K_lower  (positive = needs kappa)
    double worst_upper_slack = 0.0;  // K_upper - lambda |t-s|
    std::size_t pairs_checked = 0;
};

struct CertifyOptions {
    double speed_tolerance = 0.05;  // relative slack on sampled speeds before lambda is raised
    PathLengthOptions path;
};

AlmostGeodesicCertificate certify(const DomainSpec& domain, const SampledPath& path, double lambda_target,
                                  const CertifyOptions& opts = {});

struct QuasiGeodesicViolation : Error {
    QuasiGeodesicViolation(const std::string& what, std::size_t i_, std::size_t j_) : Error(what), i(i_), j(j_) {}
    std::size_t i;
    std::size_t j;
};

struct SmoothingConfig {
    GeodesicConfig geodesic{.initial_resolution = 8, .doublings = 1};
    std::size_t piece_samples = 16;
    double check_tolerance = 1e-9;
};

struct SmoothingResult {
    SampledPath path;
    double lambda0 = 0.0;
    double kappa0 = 0.0;
    double hausdorff_bound = 0.0;     // R = 2 lambda + 2 kappa + 2
    double hausdorff_measured = 0.0;  // on samples, from distance upper bounds
    std::size_t pieces = 0;
};

// Replace a sampled (lambda, kappa)-quasi-geodesic by an almost-geodesic built from
// near-geodesic bridges over a partition into cells of width in [1/2, 1].
SmoothingResult quasi_to_almost(const DomainSpec& domain, const SampledPath& qpath, double lambda, double kappa,
                                const SmoothingConfig& config = {});

}  // namespace gold
