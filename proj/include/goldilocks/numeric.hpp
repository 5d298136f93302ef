#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gold {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct OutsideDomain : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};

// Deterministic RNG used everywhere a seed is recorded.
using Rng = std::mt19937_64;

namespace numeric {

// Largest t in [lo, hi] with pred(t) true, assuming pred(lo) is true, pred(hi) false
// and the true-set is an interval starting at lo.
double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi, double tol);

// Golden-section minimization of a unimodal function on [a, b]; returns the argmin.
double golden_min(const std::function<double(double)>& f, double a, double b, double tol);

struct SphereMin {
    std::vector<double> argmin;
    double value = 0.0;
};

// Minimize f over the unit sphere in R^n: deterministic seed directions followed by
// pattern search in the tangent plane of the best candidates.
SphereMin minimize_on_sphere(const std::function<double(std::span<const double>)>& f, std::size_t n,
                             std::size_t random_seeds = 0, double final_step = 1e-7);

// Uniform point on the unit sphere in R^n.
std::vector<double> random_unit(Rng& rng, std::size_t n);

// Ordinary least squares y = a + b x. Returns {a, b, residual sum of squares}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;
};
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

// Stable Poincare-disk distance given |z - w|^2 / |1 - z conj(w)|^2 and the
// complementary quantity 1 - q^2 computed without cancellation.
double arctanh_from_complement(double q, double one_minus_q_sq);

// Trapezoid rule on a nonuniform grid.
double trapezoid(std::span<const double> xs, std::span<const double> ys);

// Run fn(0..n-1) on up to `threads` workers. Results must be written by index so the
// outcome does not depend on scheduling. The first exception (by index) is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Fixed 17-significant-digit formatting used for every CSV/JSON number we emit.
std::string format_double(double x);

}  // namespace numeric
}  // namespace gold
