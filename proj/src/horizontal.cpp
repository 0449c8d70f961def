#include "heisflow/horizontal.hpp"

#include "heisflow/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace heisflow {

namespace {

[[noreturn]] void throw_characteristic(const Jet2& j, double norm, double eps)
{
    std::ostringstream os;
    os.precision(17);
    os << "|N^h| = " << norm << " < " << eps << " at (" << j.value.x << ", " << j.value.y << ", " << j.value.t << ")";
    throw Error(ErrorCode::CharacteristicPoint, os.str());
}

// d/du and d/dv of J(f, g) = f_u g_v - f_v g_u.
template <typename Comp>
std::array<double, 2> jacobian_derivatives(const Jet2& j, Comp f, Comp g)
{
    const double fu = f(j.du), fv = f(j.dv), gu = g(j.du), gv = g(j.dv);
    const double fuu = f(j.duu), fuv = f(j.duv), fvv = f(j.dvv);
    const double guu = g(j.duu), guv = g(j.duv), gvv = g(j.dvv);
    return {
        fuu * gv + fu * guv - fuv * gu - fv * guu,
        fuv * gv + fu * gvv - fvv * gu - fv * guv,
    };
}

double cx(const Vec3& a) { return a.x; }
double cy(const Vec3& a) { return a.y; }
double ct(const Vec3& a) { return a.z; }

using Comp = double (*)(const Vec3&);

} // namespace

double default_eps_char(const Jet2& j)
{
    return 1e-9 * (1.0 + std::sqrt(dot(j.du, j.du) + dot(j.dv, j.dv)));
}

double resolve_eps_char(const Jet2& j, EpsChar eps) { return eps ? *eps : default_eps_char(j); }

HorizontalNormal horizontal_normal(const Jet2& j)
{
    const Jacobians jac = jacobians(j);
    const Point3& p = j.value;
    const double n1 = jac.yt + 2.0 * p.y * jac.xy;
    const double n2 = jac.tx - 2.0 * p.x * jac.xy;
    return {n1, n2, std::hypot(n1, n2), p};
}

HorizontalNormalJet horizontal_normal_jet(const Jet2& j)
{
    const Jacobians jac = jacobians(j);
    const Point3& p = j.value;
    const auto dyt = jacobian_derivatives<Comp>(j, cy, ct);
    const auto dtx = jacobian_derivatives<Comp>(j, ct, cx);
    const auto dxy = jacobian_derivatives<Comp>(j, cx, cy);

    HorizontalNormalJet r;
    r.n1 = jac.yt + 2.0 * p.y * jac.xy;
    r.n2 = jac.tx - 2.0 * p.x * jac.xy;
    r.n1_u = dyt[0] + 2.0 * j.du.y * jac.xy + 2.0 * p.y * dxy[0];
    r.n1_v = dyt[1] + 2.0 * j.dv.y * jac.xy + 2.0 * p.y * dxy[1];
    r.n2_u = dtx[0] - 2.0 * j.du.x * jac.xy - 2.0 * p.x * dxy[0];
    r.n2_v = dtx[1] - 2.0 * j.dv.x * jac.xy - 2.0 * p.x * dxy[1];
    return r;
}

Vec3 horizontal_normal_euclidean(const HorizontalNormal& n)
{
    return frame_to_euclidean({n.n1, n.n2, 0.0, n.base});
}

HorizontalVec unit_horizontal_normal(const Jet2& j, EpsChar eps)
{
    const HorizontalNormal n = horizontal_normal(j);
    const double threshold = resolve_eps_char(j, eps);
    if (!(n.norm >= threshold))
        throw_characteristic(j, n.norm, threshold);
    return {n.n1 / n.norm, n.n2 / n.norm, n.base};
}

CharacteristicTest is_characteristic(const Jet2& j, EpsChar eps)
{
    const double norm = horizontal_normal(j).norm;
    const double threshold = resolve_eps_char(j, eps);
    return {!(norm >= threshold), norm, threshold};
}

InducedFormCoeffs induced_form(const Jet2& j)
{
    const Point3& p = j.value;
    return {contact_eval(p, j.du), contact_eval(p, j.dv)};
}

FlowDirection flow_direction(const Jet2& j, EpsChar eps)
{
    const HorizontalNormal n = horizontal_normal(j);
    const double threshold = resolve_eps_char(j, eps);
    if (!(n.norm >= threshold))
        throw_characteristic(j, n.norm, threshold);
    const InducedFormCoeffs w = induced_form(j);
    const double alpha = w.p_u / n.norm;
    const double beta = w.p_v / n.norm;
    return {beta, -alpha, alpha, beta};
}

HorizontalVec pushforward_horizontal(const Jet2& j, double du, double dv)
{
    return {j.du.x * du + j.dv.x * dv, j.du.y * du + j.dv.y * dv, j.value};
}

std::optional<AlphaBeta> alpha_beta_projected(const Jet2& j, double eps_jacobian, EpsChar eps)
{
    const double d = jacobians(j).xy;
    if (!(std::abs(d) >= eps_jacobian))
        return std::nullopt;
    const HorizontalVec nu = unit_horizontal_normal(j, eps);
    return AlphaBeta{
        -(nu.h1 * j.du.x + nu.h2 * j.du.y) / d,
        -(nu.h1 * j.dv.x + nu.h2 * j.dv.y) / d,
    };
}

double normal_compatibility(const Jet2& j)
{
    const Vec3 n = cross(j.du, j.dv);
    return dot(n, horizontal_normal_euclidean(horizontal_normal(j)));
}

} // namespace heisflow
