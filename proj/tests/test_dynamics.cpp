#include <doctest.h>

#include <cmath>

#include "goldilocks/dynamics.hpp"
#include "support.hpp"

using namespace gold;
using namespace testing;

namespace {

Monomial term(Complex c, std::vector<unsigned> powers) { return Monomial{c, std::move(powers)}; }

SelfMap linear_disk_map(Complex c) {
    SelfMap m{"scale", 1, {}, false};
    m.components.push_back({Polynomial{{term(c, {1})}}, Polynomial{}});
    return m;
}

// z -> (z + a) / (1 + a z), real a in (-1, 1): fixed points +-1, attracting at sign(a).
SelfMap disk_translation(double a) {
    SelfMap m{"translation", 1, {}, false};
    m.components.push_back({Polynomial{{term(1.0, {1}), term(a, {0})}}, Polynomial{{term(1.0, {0}), term(a, {1})}}});
    return m;
}

SelfMap validated(const std::string& name) {
    const auto& item = corpus_map(name);
    return validate_map(corpus_domain(item.domain).domain, item.map);
}

// Interval slack for orbits computed in floating point: the images carry rounding error
// that the metric magnifies near the boundary (observed drift ~ 1e-18/delta^2).
double rounding_slack(double k, double delta_min) { return 1e-9 * (1.0 + k) + 1e-16 / (delta_min * delta_min); }

// Direct iteration with the closed-form map, no library code involved.
Complex translate(Complex z, double a) { return (z + a) / (1.0 + a * z); }

}  // namespace

TEST_CASE("validate_map") {
    auto disk = DomainSpec::unit_disk();
    auto half = validate_map(disk, linear_disk_map(0.5));
    CHECK(half.validated);
    try {
        validate_map(disk, linear_disk_map(2.0));
        FAIL("2z must be rejected");
    } catch (const MapRejected& e) {
        CHECK(e.witness.norm() > 0.5);
    }
    auto ball = DomainSpec::unit_ball(2);
    CHECK(validate_map(ball, corpus_map("ball_boundary_contraction").map).validated);
    // analytic bound behind the ball map: |f(z)|^2 <= (1 + |z|)/2
    Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        CPoint z = ball_point(rng, 2, 0.999);
        CPoint w = corpus_map("ball_boundary_contraction").map(z);
        CHECK(w.norm_sq() <= 0.5 * (1.0 + z.norm()) + 1e-15);
    }
    CHECK_THROWS_AS(validate_map(ball, linear_disk_map(0.5)), DimensionMismatch);

    SelfMap pole{"pole", 1, {}, false};
    pole.components.push_back({Polynomial{{term(0.1, {0})}}, Polynomial{{term(1.0, {1})}}});
    CHECK_THROWS_AS(validate_map(disk, pole), MapRejected);
}

TEST_CASE("iterate") {
    auto disk = DomainSpec::unit_disk();
    SUBCASE("rotation is 4-periodic with constant displacement") {
        auto t = iterate(disk, validated("rotation"), CVec{0.5}, 100);
        REQUIRE(t.points.size() == 101);
        for (std::size_t n = 4; n < t.points.size(); ++n) CHECK(euclidean_distance(t.points[n], t.points[n - 4]) < 1e-12);
        for (std::size_t n = 1; n < t.points.size(); ++n) {
            double expect = n % 4 == 0 ? 0.0 : model::disk_distance(t.points[n][0], 0.5);
            CHECK(t.displacement_upper[n] == doctest::Approx(expect).epsilon(1e-9));
            CHECK(t.delta[n] == doctest::Approx(0.5));
        }
        CHECK(std::isinf(t.return_distance[0]));
        CHECK(t.return_distance[4] < 1e-12);
        CHECK_FALSE(t.boundary_contact);
    }
    SUBCASE("hyperbolic map drives 0 to 1") {
        auto t = iterate(disk, validated("disk_hyperbolic"), CVec{0.0}, 50);
        Complex z = 0.0;
        for (std::size_t n = 1; n < t.points.size(); ++n) {
            z = translate(z, 0.5);
            CHECK(std::abs(t.points[n][0] - z) < 1e-12);
        }
        CHECK(std::abs(t.points.back()[0] - 1.0) < 1e-2);
        for (std::size_t n = 1; n < t.delta.size(); ++n) CHECK(t.delta[n] < t.delta[n - 1]);
    }
    SUBCASE("ball map drives 0 to (1, 0)") {
        auto ball = DomainSpec::unit_ball(2);
        auto t = iterate(ball, validated("ball_boundary_contraction"), CVec{0.0, 0.0}, 60);
        CHECK(euclidean_distance(t.points.back(), CVec{1.0, 0.0}) < 1e-6);
        // first coordinate obeys 1 - x_n = 2^-n exactly until the delta floor
        for (std::size_t n = 0; n < std::min<std::size_t>(t.points.size(), 30); ++n)
            CHECK(1.0 - t.points[n][0].real() == doctest::Approx(std::ldexp(1.0, -static_cast<int>(n))).epsilon(1e-12));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(iterate(disk, corpus_map("rotation").map, CVec{0.5}, 4), InvalidArgument);
        CHECK_THROWS_AS(iterate(disk, validated("rotation"), CVec{1.5}, 4), OutsideDomain);
        // the validated flag is not a proof: a map flagged by hand still aborts when it leaves
        auto doubling = linear_disk_map(2.0);
        doubling.validated = true;
        try {
            iterate(disk, doubling, CVec{0.3}, 10);
            FAIL("orbit must escape");
        } catch (const OrbitEscaped& e) {
            CHECK(e.n == 2);  // 0.3 -> 0.6 -> 1.2
        }
    }
}

TEST_CASE("classify") {
    auto disk = DomainSpec::unit_disk();
    auto rot = classify(disk, iterate(disk, validated("rotation"), CVec{0.5}, 100));
    CHECK(rot.kind == OrbitKind::Compact);
    CHECK_FALSE(rot.xi.has_value());
    CHECK_FALSE(rot.evidence.empty());

    auto hyp = classify(disk, iterate(disk, validated("disk_hyperbolic"), CVec{0.0}, 50));
    CHECK(hyp.kind == OrbitKind::Wolff);
    REQUIRE(hyp.xi.has_value());
    CHECK(euclidean_distance(*hyp.xi, CVec{1.0}) < 1e-3);

    auto con = classify(disk, iterate(disk, validated("disk_contraction"), CVec{0.7}, 100));
    CHECK(con.kind == OrbitKind::Compact);

    SUBCASE("oscillation between two boundary arcs is never Wolff") {
        OrbitTrace t;
        t.base = CVec{0.0};
        for (int n = 0; n < 60; ++n) {
            double r = 1.0 - std::pow(0.7, n + 1);
            Complex z = std::polar(r, n % 2 ? 3.0 : 0.0);
            t.points.push_back(CVec{z});
            t.delta.push_back(1.0 - r);
            double k = std::atanh(r);
            t.displacement_lower.push_back(k);
            t.displacement_upper.push_back(k);
            double ret = n == 0 ? INFINITY : 1.0;
            for (int m = 0; m < n; ++m) ret = std::min(ret, euclidean_distance(t.points[m], t.points.back()));
            t.return_distance.push_back(ret);
        }
        auto v = classify(disk, t);
        CHECK(v.kind == OrbitKind::Undecided);
        CHECK_FALSE(v.xi.has_value());
    }
    SUBCASE("short traces stay undecided") {
        auto t = iterate(disk, validated("rotation"), CVec{0.5}, 3);
        CHECK(classify(disk, t).kind == OrbitKind::Undecided);
    }
}

TEST_CASE("multi_start_consistency") {
    auto disk = DomainSpec::unit_disk();
    std::vector<CPoint> bases{CVec{0.0}, CVec{Complex{0.0, 0.5}}, CVec{-0.7}, CVec{Complex{0.3, 0.3}}, CVec{Complex{0.0, -0.2}}};
    auto hyp = multi_start_consistency(disk, validated("disk_hyperbolic"), bases, 80, {}, 1e-3, 2);
    CHECK(hyp.consistent);
    CHECK(hyp.xi_spread < 1e-3);
    for (const auto& v : hyp.verdicts) {
        REQUIRE(v.kind == OrbitKind::Wolff);
        CHECK(euclidean_distance(*v.xi, CVec{1.0}) < 1e-3);
    }

    auto rot = multi_start_consistency(disk, validated("rotation"), bases, 100);
    CHECK(rot.consistent);
    for (const auto& v : rot.verdicts) CHECK(v.kind == OrbitKind::Compact);

    auto ball = DomainSpec::unit_ball(2);
    std::vector<CPoint> bb{CVec{0.0, 0.0}, CVec{0.5, 0.0}, CVec{0.0, Complex{0.0, 0.6}}, CVec{-0.4, 0.4}, CVec{Complex{0.2, 0.2}, -0.3}};
    auto bm = multi_start_consistency(ball, validated("ball_boundary_contraction"), bb, 60);
    CHECK(bm.consistent);
    for (const auto& v : bm.verdicts) {
        REQUIRE(v.kind == OrbitKind::Wolff);
        CHECK(euclidean_distance(*v.xi, CVec{1.0, 0.0}) < 1e-3);
    }

    // a displacement bound between 2 arctanh 0.5 and 2 arctanh 0.7 splits the rotation orbits
    OrbitThresholds strict;
    strict.displacement_bound = 1.5;
    auto split = multi_start_consistency(disk, validated("rotation"), bases, 100, strict);
    CHECK_FALSE(split.consistent);
    CHECK_THROWS_AS(multi_start_consistency(disk, validated("rotation"), {CVec{0.0}}, 10), InvalidArgument);
}

TEST_CASE("property: orbits do not separate") {
    Rng rng(62);
    for (const char* name : {"disk_hyperbolic", "disk_contraction", "rotation", "ball_boundary_contraction"}) {
        const auto& item = corpus_map(name);
        const auto& dom = corpus_domain(item.domain).domain;
        auto f = validate_map(dom, item.map);
        CAPTURE(std::string(name));
        for (int trial = 0; trial < 10; ++trial) {
            auto pts = sample_interior(dom, 2, rng);
            CPoint a = pts[0], b = pts[1];
            double prev = distance(dom, a, b).upper;
            for (int n = 0; n < 12; ++n) {
                a = f(a);
                b = f(b);
                if (boundary_distance(dom, a) < 1e-6 || boundary_distance(dom, b) < 1e-6) break;
                double next = distance(dom, a, b).upper;
                double dmin = std::min(boundary_distance(dom, a), boundary_distance(dom, b));
                CHECK(next <= prev + rounding_slack(prev, dmin));
                prev = next;
            }
        }
    }
}

TEST_CASE("property: displacement is subadditive along an orbit") {
    Rng rng(63);
    for (const char* name : {"disk_hyperbolic", "rotation", "ball_boundary_contraction"}) {
        const auto& item = corpus_map(name);
        const auto& dom = corpus_domain(item.domain).domain;
        auto f = validate_map(dom, item.map);
        CAPTURE(std::string(name));
        IterateOptions shallow;
        shallow.delta_floor = 1e-6;
        auto t = iterate(dom, f, sample_interior(dom, 1, rng)[0], 20, shallow);
        const std::size_t n_max = t.points.size();
        for (int k = 0; k < 40; ++k) {
            std::size_t m = std::uniform_int_distribution<std::size_t>(1, n_max - 1)(rng);
            std::size_t n = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
            double lhs = distance(dom, t.points[m], t.points[n]).upper;
            double dmin = std::min({t.delta[m], t.delta[n], t.delta[m - n], t.delta[0]});
            CHECK(lhs <= t.displacement_upper[m - n] + rounding_slack(lhs, dmin));
        }
    }
}

TEST_CASE("property: verdicts survive subsampling") {
    Rng rng(64);
    for (const char* name : {"disk_hyperbolic", "disk_contraction", "rotation", "ball_boundary_contraction"}) {
        const auto& item = corpus_map(name);
        const auto& dom = corpus_domain(item.domain).domain;
        auto f = validate_map(dom, item.map);
        CAPTURE(std::string(name));
        for (const auto& o : sample_interior(dom, 4, rng)) {
            auto t = iterate(dom, f, o, 120);
            auto full = classify(dom, t);
            auto half = classify(dom, subsample(t, 2));
            CHECK(full.kind != OrbitKind::Undecided);
            CHECK(half.kind == full.kind);
            if (full.xi && half.xi) CHECK(euclidean_distance(*full.xi, *half.xi) < 1e-3);
        }
    }
    CHECK_THROWS_AS(subsample(OrbitTrace{}, 0), InvalidArgument);
}

TEST_CASE("property: the Wolff point of a disk translation is its attracting fixed point") {
    auto disk = DomainSpec::unit_disk();
    Rng rng(65);
    for (int i = 0; i < 12; ++i) {
        double a = uniform(rng, 0.2, 0.8) * (i % 2 ? -1.0 : 1.0);
        auto f = validate_map(disk, disk_translation(a));
        // f'(+-1) = (1 -+ a)/(1 +- a): the fixed point with derivative < 1 attracts
        double attracting = (1.0 - a) / (1.0 + a) < 1.0 ? 1.0 : -1.0;
        CAPTURE(a);
        auto v = classify(disk, iterate(disk, f, CVec{disk_point(rng, 0.8)}, 200));
        REQUIRE(v.kind == OrbitKind::Wolff);
        CHECK(std::abs((*v.xi)[0] - attracting) < 1e-3);
    }
}
