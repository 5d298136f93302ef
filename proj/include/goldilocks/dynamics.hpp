#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goldilocks/domains.hpp"
#include "goldilocks/kobayashi.hpp"

namespace gold {

// coeff * prod_j z_j^{powers[j]}
struct Monomial {
    Complex coeff;
    std::vector<unsigned> powers;
};

struct Polynomial {
    std::vector<Monomial> terms;
    Complex eval(const CPoint& z) const;
};

struct RationalComponent {
    Polynomial numerator;
    Polynomial denominator;  // empty means 1
};

// Component-wise rational map C^d -> C^d. `validated` only records that a statistical
// check passed; it is a precondition for iteration, not a proof that f maps into the domain.
struct SelfMap {
    std::string name;
    std::size_t dim = 1;
    std::vector<RationalComponent> components;
    bool validated = false;

    CPoint operator()(const CPoint& z) const;
    // Smallest |denominator| over the components at z.
    double min_denominator(const CPoint& z) const;
};

struct MapRejected : Error {
    MapRejected(const std::string& what, CPoint w) : Error(what), witness(std::move(w)) {}
    CPoint witness;
};

struct OrbitEscaped : Error {
    OrbitEscaped(const std::string& what, std::size_t n_) : Error(what), n(n_) {}
    std::size_t n;
};

struct ValidationConfig {
    std::size_t interior_samples = 400;
    std::vector<double> boundary_strata{1e-1, 1e-2, 1e-3};
    std::size_t per_stratum = 64;
    std::size_t lipschitz_pairs = 64;
    double lipschitz_slack = 1e-9;
    double denominator_floor = 1e-12;
    std::uint64_t seed = 5;
};

SelfMap validate_map(const DomainSpec& domain, const SelfMap& map, const ValidationConfig& config = {});

struct OrbitTrace {
    CPoint base;
    std::vector<CPoint> points;  // points[n] = f^n(base), points[0] = base
    std::vector<double> delta;
    std::vector<double> displacement_lower;  // K(f^n(o), o)
    std::vector<double> displacement_upper;
    std::vector<double> return_distance;     // min_{m < n} |f^n(o) - f^m(o)|; inf at n = 0
    bool boundary_contact = false;           // stopped early at the delta floor
};

struct IterateOptions {
    double delta_floor = 1e-12;
    DistanceOptions distance;
};

OrbitTrace iterate(const DomainSpec& domain, const SelfMap& map, const CPoint& o, std::size_t N,
                   const IterateOptions& opts = {});

// Every `stride`-th point of the trace, series included.
OrbitTrace subsample(const OrbitTrace& trace, std::size_t stride);

enum class OrbitKind { Compact, Wolff, Undecided };
std::string to_string(OrbitKind k);

struct OrbitThresholds {
    double tail_fraction = 0.25;
    double diameter_factor = 10.0;    // tail diameter < factor * (final delta + floor)
    double diameter_floor = 1e-6;
    double recurrence_eps = 1e-3;
    double displacement_bound = 50.0;
    double boundary_delta = 1e-3;     // final delta below this counts as approaching the boundary
    std::size_t warmup = 8;
};

struct OrbitVerdict {
    OrbitKind kind = OrbitKind::Undecided;
    std::optional<CPoint> xi;
    std::vector<std::string> evidence;
};

OrbitVerdict classify(const DomainSpec& domain, const OrbitTrace& trace, const OrbitThresholds& thresholds = {});

struct MultiStartReport {
    std::vector<OrbitTrace> traces;
    std::vector<OrbitVerdict> verdicts;
    bool consistent = false;
    double xi_spread = 0.0;  // max pairwise distance between Wolff points
    std::string diagnostics;
};

MultiStartReport multi_start_consistency(const DomainSpec& domain, const SelfMap& map, const std::vector<CPoint>& bases,
                                         std::size_t N, const OrbitThresholds& thresholds = {},
                                         double xi_tolerance = 1e-3, unsigned threads = 1);

}  // namespace gold
