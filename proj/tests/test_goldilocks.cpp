#include <doctest.h>

#include <cmath>
#include <numbers>

#include "goldilocks/goldilocks.hpp"
#include "support.hpp"

using namespace gold;
using namespace testing;

namespace {

// Axis rays only: cheap, and they reach the distinguished points of every corpus shape.
ShellSamplerConfig axis_sampler() {
    ShellSamplerConfig c;
    c.directions = 0;
    c.strata = {1.0};
    c.random_tangents = 0;
    return c;
}

// Composite Simpson on [a, b].
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("M on the model domains") {
    for (double r : {0.05, 0.1, 0.25}) {
        auto disk = estimate_M(DomainSpec::unit_disk(), r);
        CHECK(disk.lower == doctest::Approx(2 * r - r * r).epsilon(1e-3));
        CHECK(disk.upper == doctest::Approx(2 * r - r * r).epsilon(1e-3));
        auto ball = estimate_M(DomainSpec::unit_ball(2), r);
        CHECK(std::abs(ball.upper - std::sqrt(2 * r - r * r)) <= 5e-3);
        CHECK(ball.lower <= ball.upper);
    }
    CHECK_THROWS_AS(estimate_M(DomainSpec::unit_disk(), 0.0), InvalidArgument);
    CHECK_THROWS_AS(estimate_M(DomainSpec::unit_disk(), 1.0), InvalidArgument);
}

TEST_CASE("M of an intersection is at most the larger of its parts") {
    const auto& lens = corpus_domain("LensBalls2").domain;
    auto a = DomainSpec::convex_support(ball_piece(CVec{0.5, 0.0}, 1.0));
    auto b = DomainSpec::convex_support(ball_piece(CVec{-0.5, 0.0}, 1.0));
    for (double r : {0.01, 0.05, 0.2}) {
        double ml = estimate_M(lens, r).upper;
        double ma = estimate_M(a, r).upper, mb = estimate_M(b, r).upper;
        CHECK(ml <= std::max(ma, mb) * 1.02);
    }
}

TEST_CASE("condition 1 on the disk and the ball") {
    auto grid = geometric_grid(1e-3, 0.5, 16);
    REQUIRE(grid.size() == 16);
    CHECK(grid.front() == doctest::Approx(1e-3));
    CHECK(grid.back() == doctest::Approx(0.5));

    auto disk = condition1_test(DomainSpec::unit_disk(), grid);
    CHECK(disk.verdict == Verdict::Converges);
    CHECK(disk.integral == doctest::Approx(0.875).epsilon(2e-2 / 0.875));

    // int_0^{1/2} sqrt(2r - r^2)/r dr; with r = u^2 it becomes int_0^{1/sqrt 2} 2 sqrt(2 - u^2) du
    double oracle = simpson([](double u) { return 2.0 * std::sqrt(2.0 - u * u); }, 0.0, std::sqrt(0.5));
    CHECK(oracle == doctest::Approx(std::sqrt(0.75) + std::numbers::pi / 3).epsilon(1e-10));
    auto ball = condition1_test(DomainSpec::unit_ball(2), grid);
    CHECK(ball.verdict == Verdict::Converges);
    CHECK(std::abs(ball.integral - oracle) <= 2e-2);
}

TEST_CASE("condition 1 on synthetic tables") {
    auto grid = geometric_grid(1e-8, 0.5, 24);
    auto table = [&](double s) {
        std::vector<double> ms;
        for (double r : grid) ms.push_back(std::pow(std::log(1.0 / r), -1.0 / s));
        return ms;
    };
    CHECK(condition1_from_table(grid, table(1.5)).verdict == Verdict::Diverges);
    CHECK(condition1_from_table(grid, table(0.5)).verdict == Verdict::Converges);
    std::vector<double> flat(grid.size(), 1.0);
    CHECK(condition1_from_table(grid, flat).verdict == Verdict::Diverges);
    std::vector<double> root;
    for (double r : grid) root.push_back(std::sqrt(r));
    auto c = condition1_from_table(grid, root);
    CHECK(c.verdict == Verdict::Converges);
    CHECK(c.power.exponent == doctest::Approx(0.5).epsilon(1e-6));
    // int_0^{1/2} r^{-1/2} dr = sqrt 2
    CHECK(c.integral == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("psi threshold") {
    for (double s : {0.25, 0.5, 0.75}) CHECK(psi_threshold_test(s).verdict == Verdict::Converges);
    for (double s : {1.0, 1.5, 3.0}) CHECK(psi_threshold_test(s).verdict == Verdict::Diverges);
    CHECK_THROWS(psi_threshold_test(0.0));
    // numeric cross-check: int_{2}^{U} u^{-1/s} du keeps growing only when 1/s <= 1
    for (double s : {0.5, 1.0, 1.5}) {
        auto tail = [s](double U) { return simpson([s](double u) { return std::pow(u, -1.0 / s); }, 2.0, U, 200000); };
        double growth = tail(1e4) - tail(1e3);
        CAPTURE(s);
        CHECK((growth > 1.0) == (psi_threshold_test(s).verdict == Verdict::Diverges));
    }
}

TEST_CASE("condition 2") {
    auto disk = condition2_fit(DomainSpec::unit_disk(), CVec{0.0});
    CHECK(disk.alpha >= 0.45);
    CHECK(disk.alpha <= 0.55);
    CHECK(disk.C <= 0.4);
    CHECK(disk.max_positive_residual == 0.0);

    auto ball = DomainSpec::unit_ball(2);
    std::vector<CPoint> radial;
    for (double delta = 0.5; delta > 1e-5; delta /= 2) radial.push_back(CVec{1.0 - delta, 0.0});
    auto fit = condition2_fit(ball, CVec{0.0, 0.0}, radial);
    CHECK(fit.alpha == doctest::Approx(0.5).epsilon(0.1));
    CHECK(fit.max_positive_residual == 0.0);

    std::vector<CPoint> narrow{CVec{0.5, 0.0}, CVec{0.52, 0.0}, CVec{0.55, 0.0}};
    CHECK_THROWS_AS(condition2_fit(ball, CVec{0.0, 0.0}, narrow), InvalidArgument);
}

TEST_CASE("cone log bound") {
    auto disk = DomainSpec::unit_disk();
    ConeCheckConfig cfg;
    cfg.apertures = {2.5};
    auto rep = cone_condition_check(disk, {CVec{0.97}, CVec{Complex{-0.5, 0.8}}}, cfg);
    REQUIRE(rep.all_verified);
    auto bound = cone_log_bound(disk, rep, CVec{0.0});
    CHECK(std::isfinite(bound.C));
    CHECK(bound.slope == doctest::Approx(bound.alpha / 2));
    auto fit = condition2_fit(disk, CVec{0.0});
    CHECK(bound.slope >= 0.5 * fit.alpha);
    // the guaranteed line dominates the exact distance
    for (double delta : {1e-1, 1e-3, 1e-6})
        CHECK(std::atanh(1.0 - delta) <= bound.C + bound.slope * std::log(1.0 / delta));

    auto ball = DomainSpec::unit_ball(2);
    ConeCheckConfig bcfg;
    bcfg.apertures = {std::numbers::pi / 2};
    auto brep = cone_condition_check(ball, {CVec{0.96, 0.0}, CVec{0.0, Complex{0.0, 0.97}}}, bcfg);
    REQUIRE(brep.all_verified);
    auto bb = cone_log_bound(ball, brep, CVec{0.0, 0.0});
    CHECK(std::isfinite(bb.C));
    CHECK(bb.alpha > 0.0);

    CHECK_THROWS_AS(cone_log_bound(disk, std::nullopt, CVec{0.0}), InvalidArgument);
}

TEST_CASE("goldilocks report on the disk") {
    GoldilocksConfig cfg;
    cfg.r_grid = geometric_grid(1e-3, 0.5, 10);
    auto rep = goldilocks_report(DomainSpec::unit_disk(), cfg);
    CHECK(rep.shell_monotone);
    CHECK(rep.condition1.verdict == Verdict::Converges);
    CHECK(rep.condition2.alpha > 0.0);
    CHECK(rep.cone.all_verified);
    CHECK(rep.cone_bound.has_value());
}

TEST_CASE("property: M is nondecreasing and its enclosure is ordered") {
    auto grid = geometric_grid(1e-3, 0.4, 8);
    for (const auto& dom : cheap_domains()) {
        CAPTURE(to_string(dom.kind()));
        double prev = 0.0;
        for (double r : grid) {
            auto e = estimate_M(dom, r);
            CHECK(e.lower <= e.upper);
            CHECK(e.upper >= prev * (1.0 - 1e-6));
            prev = e.upper;
        }
    }
}

TEST_CASE("property: condition 1 verdicts on the corpus") {
    auto grid = geometric_grid(1e-3, 0.25, 10);
    for (std::string name : {"UnitDisk", "UnitBall2", "UnitBall3", "LensBalls2", "BallPair2"}) {
        CAPTURE(name);
        auto c = condition1_test(corpus_domain(name).domain, grid);
        CAPTURE(c.diagnostics);
        CHECK(c.verdict == Verdict::Converges);
    }
    // flat faces keep M at 1, so the integral of M/r diverges
    auto poly = condition1_test(corpus_domain("Polydisk2").domain, grid);
    CHECK(poly.verdict == Verdict::Diverges);
    for (double m : poly.ms) CHECK(m >= 1.0 - 1e-12);

    auto small = geometric_grid(1e-3, 0.05, 5);
    CHECK(condition1_test(corpus_domain("Egg2_1_2").domain, small, axis_sampler()).verdict == Verdict::Converges);
    CHECK(condition1_test(corpus_domain("Psi_s0.5").domain, small, axis_sampler()).verdict == Verdict::Converges);
    CHECK(condition1_test(corpus_domain("Psi_s1.5").domain, small, axis_sampler()).verdict == Verdict::Diverges);
}

TEST_CASE("property: the inflated condition 2 line bounds every sample") {
    for (const auto& dom : cheap_domains()) {
        CAPTURE(to_string(dom.kind()));
        auto fit = condition2_fit(dom, dom.interior_witness());
        CHECK(fit.max_positive_residual == 0.0);
        CHECK(fit.alpha > 0.0);
        for (const auto& s : fit.samples) {
            CHECK(s.residual <= 0.0);
            CHECK(s.k_upper <= fit.C + fit.alpha * std::log(1.0 / s.delta));
        }
    }
}

TEST_CASE("property: the ball is 2-convex") {
    auto ball = DomainSpec::unit_ball(2);
    Rng rng(41);
    std::vector<double> ratios;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        std::vector<CPoint> pts;
        for (int i = 0; i < 8; ++i) pts.push_back(unit_vector(rng, 2) * (1.0 - delta));
        ratios.push_back(convexity_order_ratio(ball, pts, 2.0));
    }
    // tangential lines leave at sqrt(2 delta - delta^2) <= sqrt(2) delta^{1/2}
    for (double r : ratios) CHECK(r <= std::sqrt(2.0) + 1e-6);
    CHECK(ratios.back() >= 1.0);
    // 2-convex implies m-convex for m > 2, but the ball is not 1-convex
    CHECK(convexity_order_ratio(ball, {CVec{1.0 - 1e-4, 0.0}}, 4.0) <= std::sqrt(2.0) * 0.1 + 1e-6);
    CHECK(convexity_order_ratio(ball, {CVec{1.0 - 1e-6, 0.0}}, 1.0) > 1000.0);
}
