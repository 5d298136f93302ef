#include "goldilocks/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace gold::numeric {

double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 300 && std::abs(b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> random_unit(Rng& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> u(n);
    double s = 0.0;
    do {
        s = 0.0;
        for (auto& x : u) {
            x = g(rng);
            s += x * x;
        }
    } while (s < 1e-20);
    s = std::sqrt(s);
    for (auto& x : u) x /= s;
    return u;
}

namespace {

void normalize(std::vector<double>& u) {
    double s = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (auto& x : u) x /= s;
}

// Orthonormal basis of the tangent plane u^perp (Gram-Schmidt against the standard basis).
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<std::vector<double>> basis;
    basis.reserve(n - 1);
    for (std::size_t k = 0; k < n && basis.size() + 1 < n; ++k) {
        std::vector<double> e(n, 0.0);
        e[k] = 1.0;
        auto project_out = [&](const std::vector<double>& b) {
            double c = std::inner_product(e.begin(), e.end(), b.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i) e[i] -= c * b[i];
        };
        project_out(u);
        for (const auto& b : basis) project_out(b);
        double s = std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
        if (s < 1e-8) continue;
        for (auto& x : e) x /= s;
        basis.push_back(std::move(e));
    }
    return basis;
}

}  // namespace

SphereMin minimize_on_sphere(const std::function<double(std::span<const double>)>& f, std::size_t n,
                             std::size_t random_seeds, double final_step) {
    if (n == 0) throw InvalidArgument("sphere dimension must be positive");
    if (random_seeds == 0) random_seeds = 48 * n;

    struct Cand {
        std::vector<double> u;
        double v;
    };
    std::vector<Cand> cands;
    auto push = [&](std::vector<double> u) {
        double v = f(u);
        cands.push_back({std::move(u), v});
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> e(n, 0.0);
        e[k] = 1.0;
        push(e);
        e[k] = -1.0;
        push(e);
    }
    Rng rng(0x5eed5eedULL + n);
    for (std::size_t k = 0; k < random_seeds; ++k) push(random_unit(rng, n));

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });
    const std::size_t refine = std::min<std::size_t>(3, cands.size());

    SphereMin best{cands.front().u, cands.front().v};
    if (n == 1) return best;

    for (std::size_t c = 0; c < refine; ++c) {
        std::vector<double> u = cands[c].u;
        double fu = cands[c].v;
        for (double h = 0.25; h >= final_step; h *= 0.5) {
            bool improved = true;
            int guard = 0;
            while (improved && guard++ < 64) {
                improved = false;
                for (const auto& t : tangent_basis(u)) {
                    for (double sgn : {1.0, -1.0}) {
                        std::vector<double> w(n);
                        for (std::size_t i = 0; i < n; ++i) w[i] = u[i] + sgn * h * t[i];
                        normalize(w);
                        double fw = f(w);
                        if (fw < fu) {
                            u = std::move(w);
                            fu = fw;
                            improved = true;
                            break;
                        }
                    }
                    if (improved) break;
                }
            }
        }
        if (fu < best.value) best = {u, fu};
    }
    return best;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw InvalidArgument("fit_line needs >= 2 matched points");
    const double n = static_cast<double>(xs.size());
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0) throw InvalidArgument("degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - fit.intercept - fit.slope * xs[i];
        fit.rss += r * r;
    }
    return fit;
}

double arctanh_from_complement(double q, double one_minus_q_sq) {
    if (q <= 0.0) return 0.0;
    if (one_minus_q_sq <= 0.0) return std::numeric_limits<double>::infinity();
    // arctanh q = 1/2 log((1+q)^2 / (1-q^2))
    return 0.5 * (2.0 * std::log1p(q) - std::log(one_minus_q_sq));
}

double trapezoid(std::span<const double> xs, std::span<const double> ys) {
    double s = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) s += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
    return s;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    auto guarded = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) guarded(i);
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace gold::numeric
