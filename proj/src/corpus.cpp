#include "goldilocks/corpus.hpp"

namespace gold {

namespace {

Monomial term(Complex c, std::vector<unsigned> powers) { return Monomial{c, std::move(powers)}; }

ConvexPieces ball_piece(CVec center, double radius) {
    ConvexPieces p;
    p.dim = center.dim();
    p.balls.push_back({std::move(center), radius});
    return p;
}

std::vector<CorpusDomain> build_domains() {
    std::vector<CorpusDomain> out;
    const std::string convex_taut = "bounded convex, hence taut and Cauchy complete";
    out.push_back({"UnitDisk", DomainSpec::unit_disk(), true, true, true, "strongly convex; " + convex_taut});
    out.push_back({"UnitBall2", DomainSpec::unit_ball(2), true, true, true, "strongly convex; " + convex_taut});
    out.push_back({"UnitBall3", DomainSpec::unit_ball(3), true, true, true, "strongly convex; " + convex_taut});
    out.push_back({"Polydisk2", DomainSpec::polydisk({1.0, 1.0}), true, false, true,
                   "flat faces: the shell sup of 1/k stays >= 1, so Condition 1 fails; " + convex_taut});
    out.push_back({"Egg2_1_2", DomainSpec::egg({1.0, 2.0}).with_lower_bound_model({0.1, 0.25}), true, true, true,
                   "smooth convex of finite type 4; metric lower bound c|v|/delta^(1/4) assumed with c = 0.1; " +
                       convex_taut});
    out.push_back({"Psi_s0.5", DomainSpec::psi_supported(DomainSpec::psi_default_base(2), 0.5), true, true, true,
                   "ball cut by Im z2 > Psi_s(|z1|), Psi_s(t) = exp(-t^-s) near 0, s = 0.5 < 1; " + convex_taut});
    out.push_back({"Psi_s1.5", DomainSpec::psi_supported(DomainSpec::psi_default_base(2), 1.5), true, false, true,
                   "same shape with s = 1.5 >= 1: the flat point at 0 breaks Condition 1; " + convex_taut});

    out.push_back({"LensBalls2",
                   DomainSpec::intersection(ball_piece(CVec{0.5, 0.0}, 1.0), ball_piece(CVec{-0.5, 0.0}, 1.0)), true,
                   true, true, "intersection of two convex Goldilocks domains; " + convex_taut});
    out.push_back({"BallPair2",
                   DomainSpec::intersection(ball_piece(CVec{0.0, 0.0}, 1.0), ball_piece(CVec{Complex{0.0, 0.3}, 0.4}, 0.9)),
                   true, true, true, "unit ball cut by a shifted ball of radius 0.9; " + convex_taut});
    return out;
}

std::vector<CorpusMap> build_maps() {
    std::vector<CorpusMap> out;
    {
        SelfMap m{"rotation", 1, {}, false};
        m.components.push_back({Polynomial{{term({0.0, 1.0}, {1})}}, Polynomial{}});
        out.push_back({"rotation", "UnitDisk", m, "compact (4-periodic)"});
    }
    {
        SelfMap m{"disk_hyperbolic", 1, {}, false};
        m.components.push_back({Polynomial{{term(1.0, {1}), term(0.5, {0})}}, Polynomial{{term(1.0, {0}), term(0.5, {1})}}});
        out.push_back({"disk_hyperbolic", "UnitDisk", m, "Wolff point 1"});
    }
    {
        SelfMap m{"disk_contraction", 1, {}, false};
        m.components.push_back({Polynomial{{term(0.5, {1})}}, Polynomial{}});
        out.push_back({"disk_contraction", "UnitDisk", m, "compact (attracting fixed point 0)"});
    }
    {
        SelfMap m{"ball_boundary_contraction", 2, {}, false};
        m.components.push_back({Polynomial{{term(0.5, {0, 0}), term(0.5, {1, 0})}}, Polynomial{}});
        m.components.push_back({Polynomial{{term(0.5, {0, 1})}}, Polynomial{}});
        out.push_back({"ball_boundary_contraction", "UnitBall2", m, "Wolff point (1, 0)"});
    }
    return out;
}

}  // namespace

const std::vector<CorpusDomain>& corpus_domains() {
    static const std::vector<CorpusDomain> domains = build_domains();
    return domains;
}

const std::vector<CorpusMap>& corpus_maps() {
    static const std::vector<CorpusMap> maps = build_maps();
    return maps;
}

const CorpusDomain& corpus_domain(const std::string& name) {
    for (const auto& d : corpus_domains())
        if (d.name == name) return d;
    throw InvalidArgument("unknown corpus domain: " + name);
}

const CorpusMap& corpus_map(const std::string& name) {
    for (const auto& m : corpus_maps())
        if (m.name == name) return m;
    throw InvalidArgument("unknown corpus map: " + name);
}

}  // namespace gold
