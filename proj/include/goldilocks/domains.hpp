#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "goldilocks/cvec.hpp"
#include "goldilocks/numeric.hpp"

namespace gold {

enum class DomainKind { UnitDisk, UnitBall, Polydisk, ConvexSupport, Egg, PsiSupported, Intersection };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

// Open Euclidean ball |z - center| < radius.
struct BallPiece {
    CVec center;
    double radius = 1.0;
};

// Open real half-space Re <z, normal> < offset.
struct HalfSpacePiece {
    CVec normal;
    double offset = 0.0;
};

// Convex body given as an intersection of balls and half-spaces (a support-function table).
struct ConvexPieces {
    std::size_t dim = 1;
    std::vector<BallPiece> balls;
    std::vector<HalfSpacePiece> halfspaces;
};

// Lower-bound model k(z; v) >= c |v| / delta(z)^epsilon, assumed rather than derived.
struct FiniteTypeModel {
    double c = 1.0;
    double epsilon = 0.5;
};

struct UnitBallShape {
    std::size_t dim = 1;
};
struct PolydiskShape {
    std::vector<double> radii;
};
struct EggShape {
    std::vector<double> exponents;  // sum |z_j|^{2 m_j} < 1
};
// base ∩ {Im z_d > Psi(|z'|)} with Psi(t) = exp(-t^{-s}) up to the knee and its tangent
// line beyond, which keeps Psi convex and increasing when knee <= inflection radius.
struct PsiShape {
    ConvexPieces base;
    double s = 0.5;
    double knee = 0.0;
};
struct IntersectionShape {
    ConvexPieces first;
    ConvexPieces second;
};

using Shape = std::variant<UnitBallShape, PolydiskShape, ConvexPieces, EggShape, PsiShape, IntersectionShape>;

class DomainSpec {
public:
    static DomainSpec unit_disk();
    static DomainSpec unit_ball(std::size_t dim);
    static DomainSpec polydisk(std::vector<double> radii);
    static DomainSpec convex_support(ConvexPieces pieces);
    static DomainSpec egg(std::vector<double> exponents);
    static DomainSpec psi_supported(ConvexPieces base, double s, std::optional<double> knee = std::nullopt);
    static DomainSpec intersection(ConvexPieces first, ConvexPieces second);

    // Default base used by the corpus: a ball around the flat boundary point at the origin.
    static ConvexPieces psi_default_base(std::size_t dim);
    // Largest |z'| on which exp(-t^{-s}) is convex.
    static double psi_inflection_radius(double s);
    static double psi_envelope(double s, double t);
    static double psi_envelope_inverse(double s, double y);
    // Envelope with the tangent-line continuation past the knee.
    static double psi_extended(double s, double knee, double t);

    DomainKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    const Shape& shape() const { return shape_; }
    bool convex() const { return convex_; }
    double enclosing_radius() const { return enclosing_radius_; }
    const CPoint& interior_witness() const { return witness_; }
    const std::optional<FiniteTypeModel>& lower_bound_model() const { return model_; }

    DomainSpec& with_lower_bound_model(FiniteTypeModel m) {
        model_ = m;
        return *this;
    }

    // Exact kinds have closed-form Kobayashi metric and distance.
    bool has_exact_metric() const;
    // Kinds whose boundary distance and rays are computed in closed form.
    bool has_exact_geometry() const;

private:
    DomainSpec(DomainKind kind, std::size_t dim, Shape shape);

    DomainKind kind_;
    std::size_t dim_;
    Shape shape_;
    bool convex_ = true;
    double enclosing_radius_ = 1.0;
    CPoint witness_;
    std::optional<FiniteTypeModel> model_;
};

struct ConeSpec {
    CPoint vertex;
    CVector axis;  // unit
    double aperture = 0.0;  // radians in (0, pi)
    double reach = 0.0;
};

struct ConeSample {
    CPoint point;
    std::optional<ConeSpec> cone;  // empty when no aperture on the grid verified
};

struct ConeReport {
    std::vector<ConeSample> samples;
    double min_aperture = 0.0;  // over samples that verified; 0 if any failed
    double reach = 0.0;
    bool all_verified = false;
};

struct ConeCheckConfig {
    double reach = 0.1;
    std::vector<double> apertures;  // tried in descending order; default 3.0, 2.95, ..., 0.1
    std::size_t axis_perturbations = 9;
    std::size_t cap_samples = 2000;
};

// Point-set queries. Every query validates the dimension of its arguments.
bool membership(const DomainSpec& domain, const CPoint& p);
double boundary_distance(const DomainSpec& domain, const CPoint& p);
CPoint nearest_boundary_point(const DomainSpec& domain, const CPoint& p);
// Exit distance along a real direction u in R^{2d} (given as a CVec, normalized internally).
double ray_to_boundary(const DomainSpec& domain, const CPoint& p, const CVector& u);

enum class DiskRadiusMethod { Auto, Sampled };

struct RadiusBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// r(z; v) = sup{ r : z + r * Delta * v/|v| inside the domain }.
double disk_radius_in_complex_line(const DomainSpec& domain, const CPoint& z, const CVector& v,
                                   DiskRadiusMethod method = DiskRadiusMethod::Auto);
// Same quantity with a certified enclosure (sampled radii are one-sided estimates).
RadiusBounds disk_radius_bounds(const DomainSpec& domain, const CPoint& z, const CVector& v,
                                DiskRadiusMethod method = DiskRadiusMethod::Auto);

ConeReport cone_condition_check(const DomainSpec& domain, const std::vector<CPoint>& samples,
                                const ConeCheckConfig& config = {});

// Points at prescribed boundary distance: start from the interior witness, follow
// `directions` rays and stop where boundary_distance equals delta.
CPoint point_at_boundary_distance(const DomainSpec& domain, const CVector& direction, double delta);

// Uniform samples inside the domain by rejection from the enclosing ball.
std::vector<CPoint> sample_interior(const DomainSpec& domain, std::size_t count, Rng& rng);

void check_dim(const DomainSpec& domain, const CVec& p);

}  // namespace gold
