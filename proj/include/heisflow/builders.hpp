#pragma once

#include "heisflow/heisenberg.hpp"
#include "heisflow/horizontal.hpp"
#include "heisflow/patch.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heisflow {

enum class TermKind { Poly, Cos, Sin };

std::string_view to_string(TermKind k);

/// coeff * s^k (Poly, 0 <= k <= 6), coeff * cos(m s), coeff * sin(m s).
struct Term {
    TermKind kind = TermKind::Poly;
    double coeff = 0.0;
    int k_or_m = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

inline constexpr int kMaxPolyDegree = 6;

/// Finite sum of terms with closed-form derivatives of any order.
struct Series {
    std::vector<Term> terms;

    double derivative(double s, int order) const;
    double operator()(double s) const { return derivative(s, 0); }
    /// Value and first three derivatives.
    std::array<double, 4> jet(double s) const;

    friend bool operator==(const Series&, const Series&) = default;
};

/// Throws InvalidSpec for out-of-range degrees or non-finite coefficients.
void validate(const Series& s, std::string_view what);

struct CurveJet {
    Point3 value;
    Vec3 d1;
    Vec3 d2;
    Vec3 d3;
};

/// s -> (x(s), y(s), t(s)) over [s_min, s_max].
struct CurveSpec {
    Series x;
    Series y;
    Series t;
    double s_min = 0.0;
    double s_max = 1.0;

    CurveJet jet(double s) const;

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

/// Ruling direction V = cos(theta) X + sin(theta) Y.
struct AngleField {
    Series theta;

    friend bool operator==(const AngleField&, const AngleField&) = default;
};

struct RuledSpec {
    CurveSpec curve;
    AngleField angle;
    double v_min = -1.0;
    double v_max = 1.0;

    Domain domain() const { return {curve.s_min, curve.s_max, v_min, v_max}; }

    friend bool operator==(const RuledSpec&, const RuledSpec&) = default;
};

/// Straightness threshold on max |x'y'' - y'x''| of the projected curve.
inline constexpr double kEpsLine = 1e-10;

/// max over samples of |x'y'' - y'x''| for pr_C(gamma).
double projected_turning(const CurveSpec& c, int samples = 129);

/// sigma(s, v) = gamma(s) + v V(s) with analytic 2-jets.
/// Throws DegenerateRuling when eta vanishes on every sample and NotRegular
/// when sigma_s x sigma_v vanishes on the sample grid.
SurfaceHandle build_straight_ruled(const RuledSpec& spec);

/// Characteristic function of the ruled patch: N^h = eta J V.
double eval_eta(const RuledSpec& spec, double s, double v);

/// Conformal factor lambda with omega_plane = lambda omega_ruled for the
/// map (s, v) -> (a(s) v, b(s) v, 0). Throws CharacteristicPoint when
/// eta(s, v) = 0 and ConstantRulingDirection when theta is constant.
double lambda_to_plane(const RuledSpec& spec, double s, double v);

/// The plane C parametrised by (s, v) -> (cos theta(s) v, sin theta(s) v, 0).
SurfaceHandle plane_flow_patch(const AngleField& angle, Domain domain);

/// Jet of the same map at any (s, v), including the singular line v = 0.
Jet2 plane_flow_jet(const AngleField& angle, double s, double v);

/// |gamma''| for a horizontal curve of unit horizontal speed.
double developable_curvature(const CurveSpec& c, double s);

/// sigma(s, v) = gamma(s) + v gamma'(s) for a horizontal, unit-speed,
/// non-straight gamma; the v range must not contain 0.
SurfaceHandle build_tangent_developable(const CurveSpec& curve, double v_min, double v_max);

/// sigma(u, v) = (x(u), y(u), v): the planar profile in the first parameter,
/// height in the second. nu^h = (y' X - x' Y) / |pi'| and H^h = kappa_s(profile).
SurfaceHandle build_cylinder(const CurveSpec& profile, double height_min, double height_max);

/// f and its derivatives up to order two.
struct GraphJet {
    double f = 0.0;
    double fx = 0.0;
    double fy = 0.0;
    double fxx = 0.0;
    double fxy = 0.0;
    double fyy = 0.0;
};

using GraphFunction = std::function<GraphJet(double x, double y)>;

/// coeff * x^kx * y^ky.
struct Monomial {
    double coeff = 0.0;
    int kx = 0;
    int ky = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

GraphFunction polynomial_graph(std::vector<Monomial> terms);

/// sigma(u, v) = (u, v, f(u, v)).
SurfaceHandle build_graph(GraphFunction f, Domain domain, std::string name = "graph");

/// Graph of a polynomial; unlike build_graph it also carries binary128 jets.
SurfaceHandle build_polynomial_graph(std::vector<Monomial> terms, Domain domain, std::string name = "graph");

struct ContactCheck {
    double lambda = 0.0;
    double residual = 0.0;
};

/// Best factor lambda with omega_image ~ lambda omega_source at one parameter
/// point (least squares on the two coefficients) and the leftover residual.
ContactCheck contact_factor(const Jet2& source, const Jet2& image);

/// max |omega_image - lambda omega_source| over the two coefficients.
double contact_residual(const Jet2& source, const Jet2& image, double lambda);

/// Fixed example surfaces.
struct CatalogParams {
    double radius = 1.0;
    std::optional<AngleField> theta;
    std::optional<Domain> domain;
};

std::vector<std::string> catalog_names();

/// Throws UnknownName.
SurfaceHandle catalog_get(std::string_view name, const CatalogParams& params = {});

/// Ruled spec of the hyperbolic paraboloid t = y^2 - x^2 from gamma = (0, s, s^2), theta = pi/4.
RuledSpec paraboloid_spec();

/// The horizontal lift (cos s, sin s, -2s) of the unit circle over [0, 2 pi].
CurveSpec circle_lift_curve();

/// Lower cone (u cos v, u sin v, u).
SurfaceHandle build_cone(Domain domain);

} // namespace heisflow
