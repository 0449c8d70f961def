#include "heisflow/builders.hpp"

#include "heisflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace heisflow {

std::string_view to_string(TermKind k)
{
    switch (k) {
    case TermKind::Poly: return "poly";
    case TermKind::Cos: return "cos";
    case TermKind::Sin: return "sin";
    }
    return "unknown";
}

namespace {

// d^order/ds^order of s^k.
template <typename T>
T power_derivative(T s, int k, int order)
{
    if (order > k)
        return T(0);
    T factor = 1;
    for (int i = 0; i < order; ++i)
        factor *= k - i;
    T p = 1;
    for (int i = 0; i < k - order; ++i)
        p *= s;
    return factor * p;
}

template <typename T>
T term_derivative(const Term& term, T s, int order)
{
    using std::cos;
    using std::sin;
    const T coeff = term.coeff;
    switch (term.kind) {
    case TermKind::Poly: return coeff * power_derivative(s, term.k_or_m, order);
    case TermKind::Cos:
    case TermKind::Sin: {
        const T m = term.k_or_m;
        T mk = 1;
        for (int i = 0; i < order; ++i)
            mk *= m;
        // Derivatives of cos cycle cos, -sin, -cos, sin; sin is cos shifted by one.
        const int phase = (order + (term.kind == TermKind::Sin ? 3 : 0)) % 4;
        const T arg = m * s;
        T base;
        switch (phase) {
        case 0: base = cos(arg); break;
        case 1: base = -sin(arg); break;
        case 2: base = -cos(arg); break;
        default: base = sin(arg); break;
        }
        return coeff * mk * base;
    }
    }
    return T(0);
}

template <typename T>
T series_derivative(const Series& series, T s, int order)
{
    T sum = 0;
    for (const Term& t : series.terms)
        sum += term_derivative(t, s, order);
    return sum;
}

template <typename T>
struct CurveJetT {
    Vec3T<T> value, d1, d2, d3;
};

template <typename T>
CurveJetT<T> curve_jet(const CurveSpec& c, T s)
{
    CurveJetT<T> j;
    Vec3T<T>* slots[4] = {&j.value, &j.d1, &j.d2, &j.d3};
    for (int k = 0; k < 4; ++k)
        *slots[k] = {series_derivative(c.x, s, k), series_derivative(c.y, s, k), series_derivative(c.t, s, k)};
    return j;
}

Jet2 to_jet2(const Jet2T<double>& j)
{
    const auto v = [](const Vec3T<double>& a) { return Vec3{a.x, a.y, a.z}; };
    return {{j.value.x, j.value.y, j.value.z}, v(j.du), v(j.dv), v(j.duu), v(j.duv), v(j.dvv)};
}

// Builds a SurfaceHandle whose double and binary128 evaluators share one
// templated jet function `f(T u, T v) -> Jet2T<T>`.
template <typename F>
SurfaceHandle analytic_surface(std::string name, Domain domain, F f)
{
    return SurfaceHandle(
        std::move(name), domain, [f](double u, double v) { return to_jet2(f(u, v)); },
        [f](double u, double v) { return f(Quad(u), Quad(v)); });
}

std::vector<double> sample_params(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
    return out;
}

template <typename T>
struct RulingJet {
    T a, da, dda;
    T b, db, ddb;
};

template <typename T>
RulingJet<T> ruling_from_angle(const AngleField& angle, T s)
{
    using std::cos;
    using std::sin;
    const T th = series_derivative(angle.theta, s, 0);
    const T w = series_derivative(angle.theta, s, 1);
    const T w2 = series_derivative(angle.theta, s, 2);
    const T a = cos(th);
    const T b = sin(th);
    return {a, -b * w, -a * w * w - b * w2, b, a * w, -b * w * w + a * w2};
}

template <typename T>
Jet2T<T> ruled_jet(const CurveJetT<T>& c, const RulingJet<T>& r, T v)
{
    const auto& p = c.value;
    const auto& d1 = c.d1;
    const auto& d2 = c.d2;
    const T two = 2;
    const T g = p.y * r.a - p.x * r.b;
    const T dg = d1.y * r.a + p.y * r.da - d1.x * r.b - p.x * r.db;
    const T ddg = d2.y * r.a + two * d1.y * r.da + p.y * r.dda - d2.x * r.b - two * d1.x * r.db - p.x * r.ddb;

    Jet2T<T> j;
    j.value = {p.x + v * r.a, p.y + v * r.b, p.z + two * v * g};
    j.du = {d1.x + v * r.da, d1.y + v * r.db, d1.z + two * v * dg};
    j.dv = {r.a, r.b, two * g};
    j.duu = {d2.x + v * r.dda, d2.y + v * r.ddb, d2.z + two * v * ddg};
    j.duv = {r.da, r.db, two * dg};
    j.dvv = {};
    return j;
}

template <typename T>
Jet2T<T> plane_flow_jet_t(const AngleField& angle, T s, T v)
{
    const RulingJet<T> r = ruling_from_angle(angle, s);
    Jet2T<T> j;
    j.value = {r.a * v, r.b * v, T(0)};
    j.du = {r.da * v, r.db * v, T(0)};
    j.dv = {r.a, r.b, T(0)};
    j.duu = {r.dda * v, r.ddb * v, T(0)};
    j.duv = {r.da, r.db, T(0)};
    j.dvv = {};
    return j;
}

template <typename T>
Jet2T<T> polynomial_graph_jet(const std::vector<Monomial>& terms, T x, T y)
{
    T f = 0, fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
    for (const Monomial& m : terms) {
        const T c = m.coeff;
        const T px = power_derivative(x, m.kx, 0), px1 = power_derivative(x, m.kx, 1), px2 = power_derivative(x, m.kx, 2);
        const T py = power_derivative(y, m.ky, 0), py1 = power_derivative(y, m.ky, 1), py2 = power_derivative(y, m.ky, 2);
        f += c * px * py;
        fx += c * px1 * py;
        fy += c * px * py1;
        fxx += c * px2 * py;
        fxy += c * px1 * py1;
        fyy += c * px * py2;
    }
    Jet2T<T> j;
    j.value = {x, y, f};
    j.du = {T(1), T(0), fx};
    j.dv = {T(0), T(1), fy};
    j.duu = {T(0), T(0), fxx};
    j.duv = {T(0), T(0), fxy};
    j.dvv = {T(0), T(0), fyy};
    return j;
}

void check_monomials(const std::vector<Monomial>& terms)
{
    for (const Monomial& m : terms)
        if (!std::isfinite(m.coeff) || m.kx < 0 || m.ky < 0 || m.kx > kMaxPolyDegree || m.ky > kMaxPolyDegree)
            throw Error(ErrorCode::InvalidSpec, "graph monomial out of range");
}

std::string at(double s, double v)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << s << ", " << v << ")";
    return os.str();
}

void check_domain(const Domain& d, std::string_view what)
{
    const bool finite = std::isfinite(d.u_min) && std::isfinite(d.u_max) && std::isfinite(d.v_min) && std::isfinite(d.v_max);
    if (!finite || !(d.u_min < d.u_max) || !(d.v_min < d.v_max))
        throw Error(ErrorCode::InvalidSpec, std::string(what) + ": empty or non-finite parameter domain");
}

void check_grid_regular(const SurfaceHandle& s, int ns, int nv)
{
    const Domain& d = s.domain();
    for (double u : sample_params(d.u_min, d.u_max, ns))
        for (double v : sample_params(d.v_min, d.v_max, nv))
            if (!(regularity(s.eval_jet2(u, v)) > kEpsRegular))
                throw Error(ErrorCode::NotRegular, s.name() + " at " + at(u, v));
}

} // namespace

double Series::derivative(double s, int order) const { return series_derivative(*this, s, order); }

std::array<double, 4> Series::jet(double s) const
{
    return {derivative(s, 0), derivative(s, 1), derivative(s, 2), derivative(s, 3)};
}

void validate(const Series& s, std::string_view what)
{
    for (const Term& t : s.terms) {
        if (!std::isfinite(t.coeff))
            throw Error(ErrorCode::InvalidSpec, std::string(what) + ": non-finite coefficient");
        if (t.kind == TermKind::Poly && (t.k_or_m < 0 || t.k_or_m > kMaxPolyDegree))
            throw Error(ErrorCode::InvalidSpec, std::string(what) + ": polynomial degree out of range [0, 6]");
    }
}

CurveJet CurveSpec::jet(double s) const
{
    const CurveJetT<double> j = curve_jet(*this, s);
    const auto v = [](const Vec3T<double>& a) { return Vec3{a.x, a.y, a.z}; };
    return {{j.value.x, j.value.y, j.value.z}, v(j.d1), v(j.d2), v(j.d3)};
}

double projected_turning(const CurveSpec& c, int samples)
{
    double worst = 0.0;
    for (double s : sample_params(c.s_min, c.s_max, samples)) {
        const CurveJet j = c.jet(s);
        worst = std::max(worst, std::abs(j.d1.x * j.d2.y - j.d1.y * j.d2.x));
    }
    return worst;
}

double eval_eta(const RuledSpec& spec, double s, double v)
{
    const CurveJet c = spec.curve.jet(s);
    const RulingJet<double> r = ruling_from_angle(spec.angle, s);
    const Point3& p = c.value;
    return c.d1.z + 2.0 * (p.x * c.d1.y - p.y * c.d1.x) + 4.0 * v * (r.a * c.d1.y - r.b * c.d1.x) +
           2.0 * v * v * (r.a * r.db - r.b * r.da);
}

SurfaceHandle build_straight_ruled(const RuledSpec& spec)
{
    validate(spec.curve.x, "curve.x");
    validate(spec.curve.y, "curve.y");
    validate(spec.curve.t, "curve.t");
    validate(spec.angle.theta, "theta");
    const Domain domain = spec.domain();
    check_domain(domain, "ruled surface");

    // eta is quadratic in v, so three distinct v samples per s decide whether
    // it vanishes identically.
    double eta_max = 0.0;
    for (double s : sample_params(domain.u_min, domain.u_max, 129))
        for (double v : {domain.v_min, 0.5 * (domain.v_min + domain.v_max), domain.v_max})
            eta_max = std::max(eta_max, std::abs(eval_eta(spec, s, v)));
    if (!(eta_max > 1e-12)) {
        std::ostringstream os;
        os << "eta vanishes on all samples (max |x'y''-y'x''| = " << projected_turning(spec.curve) << ")";
        throw Error(ErrorCode::DegenerateRuling, os.str());
    }

    SurfaceHandle h = analytic_surface("ruled", domain, [spec]<typename T>(T s, T v) {
        return ruled_jet(curve_jet(spec.curve, s), ruling_from_angle(spec.angle, s), v);
    });
    check_grid_regular(h, 65, 17);
    return h;
}

double lambda_to_plane(const RuledSpec& spec, double s, double v)
{
    bool turning = false;
    for (double x : sample_params(spec.curve.s_min, spec.curve.s_max, 129))
        if (std::abs(spec.angle.theta.derivative(x, 1)) > 1e-14)
            turning = true;
    if (!turning)
        throw Error(ErrorCode::ConstantRulingDirection, "a b' - b a' vanishes identically; the plane patch degenerates");

    const RulingJet<double> r = ruling_from_angle(spec.angle, s);
    const double eta = eval_eta(spec, s, v);
    const Jet2 j = to_jet2(ruled_jet(curve_jet(spec.curve, s), r, v));
    if (!(std::abs(eta) >= default_eps_char(j)))
        throw Error(ErrorCode::CharacteristicPoint, "eta = 0 at " + at(s, v));
    return 2.0 * v * v * (r.a * r.db - r.b * r.da) / eta;
}

Jet2 plane_flow_jet(const AngleField& angle, double s, double v) { return to_jet2(plane_flow_jet_t(angle, s, v)); }

SurfaceHandle plane_flow_patch(const AngleField& angle, Domain domain)
{
    validate(angle.theta, "theta");
    check_domain(domain, "plane patch");
    SurfaceHandle h = analytic_surface("plane_flow_patch", domain,
                                       [angle]<typename T>(T s, T v) { return plane_flow_jet_t(angle, s, v); });
    check_grid_regular(h, 65, 17);
    return h;
}

double developable_curvature(const CurveSpec& c, double s)
{
    const CurveJet j = c.jet(s);
    const Point3& p = j.value;
    return norm(Vec3{j.d2.x, j.d2.y, 2.0 * (p.y * j.d2.x - p.x * j.d2.y)});
}

SurfaceHandle build_tangent_developable(const CurveSpec& curve, double v_min, double v_max)
{
    validate(curve.x, "curve.x");
    validate(curve.y, "curve.y");
    validate(curve.t, "curve.t");
    const Domain domain{curve.s_min, curve.s_max, v_min, v_max};
    check_domain(domain, "tangent developable");
    if (v_min <= 0.0 && v_max >= 0.0)
        throw Error(ErrorCode::ZeroInRange, "ruling parameter range contains v = 0 (the curve itself)");

    for (double s : sample_params(curve.s_min, curve.s_max, 129)) {
        const CurveJet j = curve.jet(s);
        const Point3& p = j.value;
        const double residual = j.d1.z - 2.0 * (p.y * j.d1.x - p.x * j.d1.y);
        if (!(std::abs(residual) <= 1e-10))
            throw Error(ErrorCode::NotHorizontal, "t' - 2(y x' - x y') = " + std::to_string(residual) + " at s = " + std::to_string(s));
        const double speed2 = j.d1.x * j.d1.x + j.d1.y * j.d1.y;
        if (!(std::abs(speed2 - 1.0) <= 1e-10))
            throw Error(ErrorCode::NotUnitSpeed, "|pi'|^2 = " + std::to_string(speed2) + " at s = " + std::to_string(s));
        if (!(developable_curvature(curve, s) > 1e-8))
            throw Error(ErrorCode::StraightLine, "curvature vanishes at s = " + std::to_string(s));
    }

    SurfaceHandle h = analytic_surface("tangent_developable", domain, [curve]<typename T>(T s, T v) {
        const CurveJetT<T> c = curve_jet(curve, s);
        Jet2T<T> j;
        j.value = c.value + v * c.d1;
        j.du = c.d1 + v * c.d2;
        j.dv = c.d1;
        j.duu = c.d2 + v * c.d3;
        j.duv = c.d2;
        j.dvv = {};
        return j;
    });
    check_grid_regular(h, 65, 17);
    return h;
}

SurfaceHandle build_cylinder(const CurveSpec& profile, double height_min, double height_max)
{
    validate(profile.x, "profile.x");
    validate(profile.y, "profile.y");
    validate(profile.t, "profile.t");
    const Domain domain{profile.s_min, profile.s_max, height_min, height_max};
    check_domain(domain, "cylinder");
    for (double s : sample_params(profile.s_min, profile.s_max, 129)) {
        const CurveJet j = profile.jet(s);
        if (j.value.t != 0.0 || j.d1.z != 0.0)
            throw Error(ErrorCode::NotRegularProfile, "profile must lie in the plane t = 0");
        if (!(std::hypot(j.d1.x, j.d1.y) > kEpsRegular))
            throw Error(ErrorCode::NotRegularProfile, "profile velocity vanishes at s = " + std::to_string(s));
    }
    return analytic_surface("cylinder", domain, [profile]<typename T>(T u, T v) {
        const CurveJetT<T> c = curve_jet(profile, u);
        Jet2T<T> j;
        j.value = {c.value.x, c.value.y, v};
        j.du = {c.d1.x, c.d1.y, T(0)};
        j.dv = {T(0), T(0), T(1)};
        j.duu = {c.d2.x, c.d2.y, T(0)};
        j.duv = {};
        j.dvv = {};
        return j;
    });
}

GraphFunction polynomial_graph(std::vector<Monomial> terms)
{
    check_monomials(terms);
    return [terms = std::move(terms)](double x, double y) {
        const Jet2T<double> j = polynomial_graph_jet(terms, x, y);
        return GraphJet{j.value.z, j.du.z, j.dv.z, j.duu.z, j.duv.z, j.dvv.z};
    };
}

SurfaceHandle build_polynomial_graph(std::vector<Monomial> terms, Domain domain, std::string name)
{
    check_monomials(terms);
    check_domain(domain, "graph");
    return analytic_surface(std::move(name), domain,
                            [terms = std::move(terms)]<typename T>(T u, T v) { return polynomial_graph_jet(terms, u, v); });
}

SurfaceHandle build_graph(GraphFunction f, Domain domain, std::string name)
{
    check_domain(domain, "graph");
    return SurfaceHandle(std::move(name), domain, [f = std::move(f)](double u, double v) {
        const GraphJet g = f(u, v);
        Jet2 j;
        j.value = {u, v, g.f};
        j.du = {1.0, 0.0, g.fx};
        j.dv = {0.0, 1.0, g.fy};
        j.duu = {0.0, 0.0, g.fxx};
        j.duv = {0.0, 0.0, g.fxy};
        j.dvv = {0.0, 0.0, g.fyy};
        return j;
    });
}

ContactCheck contact_factor(const Jet2& source, const Jet2& image)
{
    const InducedFormCoeffs p = induced_form(source);
    const InducedFormCoeffs q = induced_form(image);
    const double pp = p.p_u * p.p_u + p.p_v * p.p_v;
    if (!(pp > 0.0))
        throw Error(ErrorCode::CharacteristicPoint, "source induced form vanishes");
    const double lambda = (q.p_u * p.p_u + q.p_v * p.p_v) / pp;
    return {lambda, contact_residual(source, image, lambda)};
}

double contact_residual(const Jet2& source, const Jet2& image, double lambda)
{
    const InducedFormCoeffs p = induced_form(source);
    const InducedFormCoeffs q = induced_form(image);
    return std::max(std::abs(q.p_u - lambda * p.p_u), std::abs(q.p_v - lambda * p.p_v));
}

RuledSpec paraboloid_spec()
{
    RuledSpec spec;
    spec.curve.y.terms = {{TermKind::Poly, 1.0, 1}};
    spec.curve.t.terms = {{TermKind::Poly, 1.0, 2}};
    spec.curve.s_min = -1.0;
    spec.curve.s_max = 1.0;
    spec.angle.theta.terms = {{TermKind::Poly, std::numbers::pi / 4.0, 0}};
    spec.v_min = -1.0;
    spec.v_max = 1.0;
    return spec;
}

CurveSpec circle_lift_curve()
{
    CurveSpec c;
    c.x.terms = {{TermKind::Cos, 1.0, 1}};
    c.y.terms = {{TermKind::Sin, 1.0, 1}};
    c.t.terms = {{TermKind::Poly, -2.0, 1}};
    c.s_min = 0.0;
    c.s_max = 2.0 * std::numbers::pi;
    return c;
}

SurfaceHandle build_cone(Domain domain)
{
    check_domain(domain, "cone");
    if (!(domain.u_max < 0.0))
        throw Error(ErrorCode::InvalidSpec, "lower cone requires u < 0");
    return analytic_surface("cone_lower", domain, []<typename T>(T u, T v) {
        using std::cos;
        using std::sin;
        const T c = cos(v), s = sin(v);
        Jet2T<T> j;
        j.value = {u * c, u * s, u};
        j.du = {c, s, T(1)};
        j.dv = {-u * s, u * c, T(0)};
        j.duu = {};
        j.duv = {-s, c, T(0)};
        j.dvv = {-u * c, -u * s, T(0)};
        return j;
    });
}

std::vector<std::string> catalog_names()
{
    return {"paraboloid", "cone_lower", "vertical_plane_x0", "plane_t0",
            "plane_flow_patch", "cylinder", "circle_lift_developable"};
}

SurfaceHandle catalog_get(std::string_view name, const CatalogParams& params)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const auto dom = [&](Domain fallback) { return params.domain.value_or(fallback); };

    if (name == "paraboloid") {
        RuledSpec spec = paraboloid_spec();
        const Domain d = dom(spec.domain());
        spec.curve.s_min = d.u_min;
        spec.curve.s_max = d.u_max;
        spec.v_min = d.v_min;
        spec.v_max = d.v_max;
        return build_straight_ruled(spec).renamed("paraboloid");
    }
    if (name == "cone_lower")
        return build_cone(dom({-2.0, -0.5, 0.1, two_pi - 0.1}));
    if (name == "vertical_plane_x0") {
        const Domain d = dom({-1.0, 1.0, -1.0, 1.0});
        check_domain(d, "vertical plane");
        return analytic_surface("vertical_plane_x0", d, []<typename T>(T u, T v) {
            Jet2T<T> j;
            j.value = {T(0), u, v};
            j.du = {T(0), T(1), T(0)};
            j.dv = {T(0), T(0), T(1)};
            return j;
        });
    }
    if (name == "plane_t0")
        return build_polynomial_graph({}, dom({-1.0, 1.0, -1.0, 1.0}), "plane_t0");
    if (name == "plane_flow_patch") {
        AngleField theta = params.theta.value_or(AngleField{{{{TermKind::Poly, 1.0, 1}}}});
        return plane_flow_patch(theta, dom({0.0, two_pi, 0.2, 1.0})).renamed("plane_flow_patch");
    }
    if (name == "cylinder") {
        if (!(params.radius > 0.0) || !std::isfinite(params.radius))
            throw Error(ErrorCode::InvalidSpec, "cylinder radius must be positive");
        const Domain d = dom({0.0, two_pi, -1.0, 1.0});
        CurveSpec profile;
        profile.x.terms = {{TermKind::Cos, params.radius, 1}};
        profile.y.terms = {{TermKind::Sin, params.radius, 1}};
        profile.s_min = d.u_min;
        profile.s_max = d.u_max;
        return build_cylinder(profile, d.v_min, d.v_max).renamed("cylinder");
    }
    if (name == "circle_lift_developable") {
        const Domain d = dom({0.0, two_pi, 0.2, 1.0});
        CurveSpec c = circle_lift_curve();
        c.s_min = d.u_min;
        c.s_max = d.u_max;
        return build_tangent_developable(c, d.v_min, d.v_max).renamed("circle_lift_developable");
    }
    throw Error(ErrorCode::UnknownName, "no catalog surface named '" + std::string(name) + "'");
}

} // namespace heisflow
