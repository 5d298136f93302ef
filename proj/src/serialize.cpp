#include "goldilocks/serialize.hpp"

#include <cmath>
#include <limits>

namespace gold {

namespace {

// JSON has no infinities; they are written as null.
Json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

Json pieces_json(const ConvexPieces& c) {
    Json balls = Json::array(), halves = Json::array();
    for (const auto& b : c.balls) balls.push_back({{"center", to_json(b.center)}, {"radius", b.radius}});
    for (const auto& h : c.halfspaces) halves.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
    return {{"dim", c.dim}, {"balls", balls}, {"halfspaces", halves}};
}

ConvexPieces pieces_from_json(const Json& j) {
    ConvexPieces c;
    c.dim = static_cast<std::size_t>(number(j, "dim"));
    for (const auto& b : j.value("balls", Json::array()))
        c.balls.push_back(BallPiece{cvec_from_json(require(b, "center")), number(b, "radius")});
    for (const auto& h : j.value("halfspaces", Json::array()))
        c.halfspaces.push_back(HalfSpacePiece{cvec_from_json(require(h, "normal")), number(h, "offset")});
    return c;
}

Json polynomial_json(const Polynomial& p) {
    Json out = Json::array();
    for (const auto& t : p.terms) out.push_back({{"coeff", to_json(t.coeff)}, {"powers", t.powers}});
    return out;
}

Polynomial polynomial_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array()) throw SchemaError("polynomial must be an array of terms");
    Polynomial p;
    for (const auto& t : j) {
        Monomial m;
        m.coeff = complex_from_json(require(t, "coeff"));
        const Json& pw = require(t, "powers");
        if (!pw.is_array() || pw.size() != dim) throw SchemaError("term powers must list one exponent per variable");
        for (const auto& e : pw) {
            if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
                throw SchemaError("term powers must be non-negative integers");
            m.powers.push_back(e.get<unsigned>());
        }
        p.terms.push_back(std::move(m));
    }
    return p;
}

void csv_point_header(std::ostream& os, std::size_t dim) {
    for (std::size_t j = 0; j < dim; ++j) os << ",re_z" << j + 1 << ",im_z" << j + 1;
}

void csv_point(std::ostream& os, const CPoint& p) {
    for (std::size_t j = 0; j < p.dim(); ++j)
        os << ',' << numeric::format_double(p[j].real()) << ',' << numeric::format_double(p[j].imag());
}

std::string f(double x) { return numeric::format_double(x); }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVec& v) {
    Json out = Json::array();
    for (std::size_t j = 0; j < v.dim(); ++j) out.push_back(to_json(v[j]));
    return out;
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError("complex numbers are [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

CVec cvec_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("points are arrays of [re, im]");
    std::vector<Complex> c;
    for (const auto& z : j) c.push_back(complex_from_json(z));
    return CVec(std::move(c));
}

Json to_json(const DomainSpec& d) {
    Json params = Json::object();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, UnitBallShape>) {
                if (d.kind() == DomainKind::UnitBall) params["dim"] = s.dim;
            } else if constexpr (std::is_same_v<T, PolydiskShape>) {
                params["radii"] = s.radii;
            } else if constexpr (std::is_same_v<T, ConvexPieces>) {
                params = pieces_json(s);
            } else if constexpr (std::is_same_v<T, EggShape>) {
                params["exponents"] = s.exponents;
            } else if constexpr (std::is_same_v<T, PsiShape>) {
                params["s"] = s.s;
                params["knee"] = s.knee;
                params["base"] = pieces_json(s.base);
            } else if constexpr (std::is_same_v<T, IntersectionShape>) {
                params["first"] = pieces_json(s.first);
                params["second"] = pieces_json(s.second);
            }
        },
        d.shape());
    if (const auto& m = d.lower_bound_model()) params["lower_bound_model"] = {{"c", m->c}, {"epsilon", m->epsilon}};
    return {{"kind", to_string(d.kind())}, {"params", params}};
}

DomainSpec domain_from_json(const Json& j) {
    const Json& kind_j = require(j, "kind");
    if (!kind_j.is_string()) throw SchemaError("domain kind must be a string");
    DomainKind kind;
    try {
        kind = domain_kind_from_string(kind_j.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
    }
    const Json params = j.value("params", Json::object());
    auto build = [&]() -> DomainSpec {
        switch (kind) {
            case DomainKind::UnitDisk: return DomainSpec::unit_disk();
            case DomainKind::UnitBall: return DomainSpec::unit_ball(static_cast<std::size_t>(number(params, "dim")));
            case DomainKind::Polydisk: return DomainSpec::polydisk(require(params, "radii").get<std::vector<double>>());
            case DomainKind::ConvexSupport: return DomainSpec::convex_support(pieces_from_json(params));
            case DomainKind::Egg: return DomainSpec::egg(require(params, "exponents").get<std::vector<double>>());
            case DomainKind::PsiSupported: {
                double s = number(params, "s");
                ConvexPieces base = params.contains("base") ? pieces_from_json(params.at("base"))
                                                            : DomainSpec::psi_default_base(static_cast<std::size_t>(params.value("dim", 2)));
                std::optional<double> knee;
                if (params.contains("knee")) knee = number(params, "knee");
                return DomainSpec::psi_supported(std::move(base), s, knee);
            }
            case DomainKind::Intersection:
                return DomainSpec::intersection(pieces_from_json(require(params, "first")),
                                                pieces_from_json(require(params, "second")));
        }
        throw SchemaError("unknown domain kind");
    };
    try {
        DomainSpec d = build();
        if (params.contains("lower_bound_model")) {
            const Json& m = params.at("lower_bound_model");
            d.with_lower_bound_model(FiniteTypeModel{number(m, "c"), number(m, "epsilon")});
        }
        return d;
    } catch (const SchemaError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("domain params: ") + e.what());
    } catch (const Error& e) {
        throw SchemaError(std::string("domain params: ") + e.what());
    }
}

Json to_json(const SelfMap& m) {
    Json comps = Json::array();
    for (const auto& c : m.components)
        comps.push_back({{"numerator", polynomial_json(c.numerator)}, {"denominator", polynomial_json(c.denominator)}});
    return {{"name", m.name}, {"dim", m.dim}, {"components", comps}, {"validated", m.validated}};
}

SelfMap self_map_from_json(const Json& j) {
    const Json& comps = require(j, "components");
    if (!comps.is_array() || comps.empty()) throw SchemaError("components must be a non-empty array");
    SelfMap m;
    m.name = j.value("name", "");
    m.dim = comps.size();
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != m.dim)
        throw SchemaError("dim must equal the number of components");
    for (const auto& c : comps) {
        RationalComponent rc;
        rc.numerator = polynomial_from_json(require(c, "numerator"), m.dim);
        if (c.contains("denominator")) rc.denominator = polynomial_from_json(c.at("denominator"), m.dim);
        m.components.push_back(std::move(rc));
    }
    return m;
}

Json to_json(const MetricEstimate& e) {
    return {{"lower", num(e.lower)},
            {"upper", num(e.upper)},
            {"lower_rule", to_string(e.lower_rule)},
            {"upper_rule", to_string(e.upper_rule)}};
}

Json to_json(const AlmostGeodesicCertificate& c) {
    return {{"lambda", c.lambda},
            {"kappa", c.kappa},
            {"speed_max", c.speed_max},
            {"lambda_raised", c.lambda_raised},
            {"worst_pair", {c.worst_i, c.worst_j}},
            {"worst_lower_slack", num(c.worst_lower_slack)},
            {"worst_upper_slack", num(c.worst_upper_slack)},
            {"pairs_checked", c.pairs_checked}};
}

Json to_json(const SmoothingResult& r) {
    return {{"lambda0", r.lambda0},
            {"kappa0", r.kappa0},
            {"hausdorff_bound", r.hausdorff_bound},
            {"hausdorff_measured", r.hausdorff_measured},
            {"pieces", r.pieces},
            {"samples", r.path.size()}};
}

Json to_json(const ShellEstimate& s) {
    return {{"r", s.r},
            {"lower", num(s.lower)},
            {"upper", num(s.upper)},
            {"upper_rule", to_string(s.upper_rule)},
            {"points", s.points},
            {"argmax", to_json(s.argmax)}};
}

namespace {
Json tail_json(const TailFit& t) {
    return {{"family", t.family}, {"a", num(t.a)},   {"exponent", num(t.exponent)}, {"rss", num(t.rss)},
            {"aic", num(t.aic)},  {"ok", t.ok},      {"verdict", to_string(t.verdict)},
            {"tail_integral", num(t.tail_integral)}};
}
}  // namespace

Json to_json(const Condition1Result& r) {
    return {{"r_min", r.rs.empty() ? Json(nullptr) : Json(r.rs.front())},
            {"r_max", r.rs.empty() ? Json(nullptr) : Json(r.rs.back())},
            {"grid_integral", num(r.grid_integral)},
            {"integral", num(r.integral)},
            {"power_fit", tail_json(r.power)},
            {"log_fit", tail_json(r.log)},
            {"chosen", r.chosen},
            {"verdict", to_string(r.verdict)},
            {"diagnostics", r.diagnostics}};
}

Json to_json(const Condition2Result& r) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : r.samples) worst = std::max(worst, s.residual);
    return {{"base", to_json(r.base)},
            {"C", r.C},
            {"C_fit", r.C_fit},
            {"alpha", r.alpha},
            {"max_positive_residual", r.max_positive_residual},
            {"max_residual", num(worst)},
            {"rss", r.rss},
            {"samples", r.samples.size()}};
}

Json to_json(const PsiThreshold& t) { return {{"s", t.s}, {"exponent", t.exponent}, {"verdict", to_string(t.verdict)}}; }

Json to_json(const ConeReport& r) {
    std::size_t verified = 0;
    for (const auto& s : r.samples) verified += s.cone ? 1 : 0;
    return {{"samples", r.samples.size()},
            {"verified", verified},
            {"all_verified", r.all_verified},
            {"min_aperture", r.min_aperture},
            {"reach", r.reach}};
}

Json to_json(const ConeLogBound& b) {
    return {{"C", b.C},         {"alpha", b.alpha}, {"slope", b.slope},       {"R", b.R},
            {"C1", b.C1},       {"aperture", b.aperture}, {"reach", b.reach}};
}

Json to_json(const GoldilocksReport& r) {
    Json shell = Json::array();
    for (const auto& s : r.shell_table) shell.push_back(to_json(s));
    return {{"shell_table", shell},
            {"shell_monotone", r.shell_monotone},
            {"condition1", to_json(r.condition1)},
            {"condition2", to_json(r.condition2)},
            {"cone", to_json(r.cone)},
            {"cone_bound", r.cone_bound ? to_json(*r.cone_bound) : Json(nullptr)}};
}

Json to_json(const VisibilityReport& r) {
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json tj = {{"index", t.index}, {"x", to_json(t.x)}, {"y", to_json(t.y)}, {"ok", t.ok}};
        if (!t.ok) {
            tj["failure"] = t.failure;
        } else {
            tj["certificate"] = to_json(t.certificate);
            tj["certified"] = t.certified;
            tj["max_delta"] = t.max_delta;
            tj["min_delta"] = t.min_delta;
            tj["min_distance"] = t.min_distance;
            tj["closest"] = to_json(t.closest);
            tj["speed_ratio"] = t.speed_ratio;
            tj["speed_ok"] = t.speed_ok;
            tj["midpoint_defect"] = t.midpoint_defect;
        }
        trials.push_back(tj);
    }
    return {{"trials", trials},
            {"running_sup", r.running_sup},
            {"sup_min_distance", r.sup_min_distance},
            {"stabilized", r.stabilized},
            {"verdict", r.verdict},
            {"note", r.note}};
}

Json to_json(const GromovReport& r) {
    return {{"running_max", r.running_max}, {"stabilized", r.stabilized}, {"verdict", r.verdict},
            {"rows", r.table.size()}, {"cols", r.table.empty() ? 0 : r.table.front().size()}};
}

Json to_json(const OrbitVerdict& v) {
    return {{"kind", to_string(v.kind)}, {"xi", v.xi ? to_json(*v.xi) : Json(nullptr)}, {"evidence", v.evidence}};
}

Json orbit_summary_json(const OrbitTrace& t) {
    return {{"base", to_json(t.base)},
            {"length", t.points.size()},
            {"final_point", to_json(t.points.back())},
            {"final_delta", t.delta.back()},
            {"max_displacement_upper", *std::max_element(t.displacement_upper.begin(), t.displacement_upper.end())},
            {"boundary_contact", t.boundary_contact}};
}

Json to_json(const MultiStartReport& r) {
    Json runs = Json::array();
    for (std::size_t i = 0; i < r.traces.size(); ++i)
        runs.push_back({{"trace", orbit_summary_json(r.traces[i])}, {"verdict", to_json(r.verdicts[i])}});
    return {{"runs", runs}, {"consistent", r.consistent}, {"xi_spread", r.xi_spread}, {"diagnostics", r.diagnostics}};
}

void write_path_csv(std::ostream& os, const DomainSpec& domain, const SampledPath& path) {
    os << "k,t";
    csv_point_header(os, domain.dim());
    os << ",delta\n";
    for (std::size_t k = 0; k < path.size(); ++k) {
        os << k << ',' << f(path.params[k]);
        csv_point(os, path.points[k]);
        os << ',' << f(boundary_distance(domain, path.points[k])) << '\n';
    }
}

void write_shell_csv(std::ostream& os, const std::vector<ShellEstimate>& table) {
    os << "r,lower,upper,upper_rule,points\n";
    for (const auto& s : table)
        os << f(s.r) << ',' << f(s.lower) << ',' << f(s.upper) << ',' << to_string(s.upper_rule) << ',' << s.points << '\n';
}

void write_condition2_csv(std::ostream& os, const Condition2Result& r) {
    os << "delta,log_inv_delta,k_upper,residual\n";
    for (const auto& s : r.samples)
        os << f(s.delta) << ',' << f(std::log(1.0 / s.delta)) << ',' << f(s.k_upper) << ',' << f(s.residual) << '\n';
}

void write_trace_csv(std::ostream& os, const OrbitTrace& t) {
    const std::size_t dim = t.points.empty() ? 0 : t.points.front().dim();
    os << "n";
    csv_point_header(os, dim);
    os << ",delta,displacement_lower,displacement_upper,return_distance\n";
    for (std::size_t n = 0; n < t.points.size(); ++n) {
        os << n;
        csv_point(os, t.points[n]);
        os << ',' << f(t.delta[n]) << ',' << f(t.displacement_lower[n]) << ',' << f(t.displacement_upper[n]) << ','
           << (std::isfinite(t.return_distance[n]) ? f(t.return_distance[n]) : std::string("inf")) << '\n';
    }
}

void write_visibility_csv(std::ostream& os, const VisibilityReport& r) {
    os << "trial,ok,certified,lambda,kappa,min_distance,max_delta,min_delta,speed_ratio,midpoint_defect,running_sup\n";
    std::size_t k = 0;
    for (const auto& t : r.trials) {
        os << t.index << ',' << (t.ok ? 1 : 0) << ',' << (t.certified ? 1 : 0) << ',';
        if (t.ok) {
            os << f(t.certificate.lambda) << ',' << f(t.certificate.kappa) << ',' << f(t.min_distance) << ','
               << f(t.max_delta) << ',' << f(t.min_delta) << ',' << f(t.speed_ratio) << ',' << f(t.midpoint_defect) << ','
               << f(r.running_sup[k++]) << '\n';
        } else {
            os << ",,,,,,,,\n";
        }
    }
}

void write_gromov_csv(std::ostream& os, const GromovReport& r) {
    os << "n,m,lower,upper\n";
    for (std::size_t n = 0; n < r.table.size(); ++n)
        for (std::size_t m = 0; m < r.table[n].size(); ++m)
            os << n << ',' << m << ',' << f(r.table[n][m].lower) << ',' << f(r.table[n][m].upper) << '\n';
}

}  // namespace gold
