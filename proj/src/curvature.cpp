#include "heisflow/curvature.hpp"

#include "heisflow/error.hpp"
#include "heisflow/flow.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace heisflow {

namespace {

struct UnitNormal {
    double nu1;
    double nu2;
};

UnitNormal unit_normal_at(const SurfaceHandle& s, double u, double v, EpsChar eps)
{
    const HorizontalVec nu = unit_horizontal_normal(s.eval_jet2(u, v), eps);
    return {nu.h1, nu.h2};
}

// Derivative along one parameter with step h, central when the stencil fits,
// otherwise second-order one-sided into the domain.
template <typename Eval>
std::array<double, 2> directional_fd(Eval eval, double x, double lo, double hi, double h)
{
    if (x - h >= lo && x + h <= hi) {
        const UnitNormal p = eval(x + h), m = eval(x - h);
        return {(p.nu1 - m.nu1) / (2.0 * h), (p.nu2 - m.nu2) / (2.0 * h)};
    }
    const double sgn = (x + 2.0 * h <= hi) ? 1.0 : -1.0;
    const double step = sgn * h;
    const UnitNormal f0 = eval(x), f1 = eval(x + step), f2 = eval(x + 2.0 * step);
    return {
        (-3.0 * f0.nu1 + 4.0 * f1.nu1 - f2.nu1) / (2.0 * step),
        (-3.0 * f0.nu2 + 4.0 * f1.nu2 - f2.nu2) / (2.0 * step),
    };
}

// Components of a Vec3T used by the Jacobian derivative below.
template <typename T>
struct Pick {
    int idx;
    const T& operator()(const Vec3T<T>& a) const { return idx == 0 ? a.x : idx == 1 ? a.y : a.z; }
};

// d/du and d/dv of J(f, g) = f_u g_v - f_v g_u.
template <typename T>
std::array<T, 2> jacobian_derivatives_t(const Jet2T<T>& j, Pick<T> f, Pick<T> g)
{
    return {
        f(j.duu) * g(j.dv) + f(j.du) * g(j.duv) - f(j.duv) * g(j.du) - f(j.dv) * g(j.duu),
        f(j.duv) * g(j.dv) + f(j.du) * g(j.dvv) - f(j.dvv) * g(j.du) - f(j.dv) * g(j.duv),
    };
}

} // namespace

double mean_curvature_precise(const JetQ& j, double eps_jacobian, CurvatureBranch* branch)
{
    using T = Quad;
    const Pick<T> X{0}, Y{1}, Z{2};
    const T two = 2;
    const T jyt = j.du.y * j.dv.z - j.dv.y * j.du.z;
    const T jtx = j.du.z * j.dv.x - j.dv.z * j.du.x;
    const T jxy = j.du.x * j.dv.y - j.dv.x * j.du.y;
    const auto dyt = jacobian_derivatives_t(j, Y, Z);
    const auto dtx = jacobian_derivatives_t(j, Z, X);
    const auto dxy = jacobian_derivatives_t(j, X, Y);
    const Vec3T<T>& p = j.value;

    const T n1 = jyt + two * p.y * jxy;
    const T n2 = jtx - two * p.x * jxy;
    const T n1_u = dyt[0] + two * j.du.y * jxy + two * p.y * dxy[0];
    const T n1_v = dyt[1] + two * j.dv.y * jxy + two * p.y * dxy[1];
    const T n2_u = dtx[0] - two * j.du.x * jxy - two * p.x * dxy[0];
    const T n2_v = dtx[1] - two * j.dv.x * jxy - two * p.x * dxy[1];

    const T norm = sqrt(n1 * n1 + n2 * n2);
    const T nu1 = n1 / norm, nu2 = n2 / norm;
    const T proj_u = nu1 * n1_u + nu2 * n2_u;
    const T proj_v = nu1 * n1_v + nu2 * n2_v;
    const T nu1_u = (n1_u - nu1 * proj_u) / norm;
    const T nu2_u = (n2_u - nu2 * proj_u) / norm;
    const T nu1_v = (n1_v - nu1 * proj_v) / norm;
    const T nu2_v = (n2_v - nu2 * proj_v) / norm;

    if (abs(jxy) >= eps_jacobian) {
        if (branch)
            *branch = CurvatureBranch::Jacobian;
        const T d_nu1_y = nu1_u * j.dv.y - nu1_v * j.du.y;
        const T d_x_nu2 = j.du.x * nu2_v - j.dv.x * nu2_u;
        return static_cast<double>((d_nu1_y + d_x_nu2) / jxy);
    }
    if (branch)
        *branch = CurvatureBranch::VerticalTangent;
    const T p_u = j.du.z + two * p.x * j.du.y - two * p.y * j.du.x;
    const T p_v = j.dv.z + two * p.x * j.dv.y - two * p.y * j.dv.x;
    const T alpha = p_u / norm, beta = p_v / norm;
    const T dnu1 = beta * nu1_u - alpha * nu1_v;
    const T dnu2 = beta * nu2_u - alpha * nu2_v;
    return static_cast<double>(nu1 * dnu2 - nu2 * dnu1);
}

NormalJet normal_jet(const Jet2& j, EpsChar eps)
{
    const HorizontalVec nu = unit_horizontal_normal(j, eps);
    const HorizontalNormalJet nj = horizontal_normal_jet(j);
    const double norm = std::hypot(nj.n1, nj.n2);
    const double n1_u = nj.n1_u, n1_v = nj.n1_v, n2_u = nj.n2_u, n2_v = nj.n2_v;

    // d(n/|n|) = (dn - nu (nu . dn)) / |n|
    const double proj_u = nu.h1 * n1_u + nu.h2 * n2_u;
    const double proj_v = nu.h1 * n1_v + nu.h2 * n2_v;
    NormalJet r;
    r.nu1 = nu.h1;
    r.nu2 = nu.h2;
    r.norm = norm;
    r.nu1_u = (n1_u - nu.h1 * proj_u) / norm;
    r.nu2_u = (n2_u - nu.h2 * proj_u) / norm;
    r.nu1_v = (n1_v - nu.h1 * proj_v) / norm;
    r.nu2_v = (n2_v - nu.h2 * proj_v) / norm;
    return r;
}

NormalJet normal_jet_fd(const SurfaceHandle& s, double u, double v, EpsChar eps)
{
    const Domain& d = s.domain();
    const Jet2 j = s.eval_jet2(u, v);
    const HorizontalVec nu = unit_horizontal_normal(j, eps);
    const double hu = 1e-5 * d.u_span();
    const double hv = 1e-5 * d.v_span();

    const auto du = directional_fd([&](double x) { return unit_normal_at(s, x, v, eps); }, u, d.u_min, d.u_max, hu);
    const auto dv = directional_fd([&](double x) { return unit_normal_at(s, u, x, eps); }, v, d.v_min, d.v_max, hv);

    NormalJet r;
    r.nu1 = nu.h1;
    r.nu2 = nu.h2;
    r.norm = horizontal_normal(j).norm;
    r.nu1_u = du[0];
    r.nu2_u = du[1];
    r.nu1_v = dv[0];
    r.nu2_v = dv[1];
    return r;
}

double mean_curvature_jacobian_formula(const Jet2& j, const NormalJet& n)
{
    const double d_nu1_y = n.nu1_u * j.dv.y - n.nu1_v * j.du.y;
    const double d_x_nu2 = j.du.x * n.nu2_v - j.dv.x * n.nu2_u;
    return (d_nu1_y + d_x_nu2) / jacobians(j).xy;
}

double mean_curvature_leaf_formula(const Jet2& j, const NormalJet& n)
{
    const InducedFormCoeffs w = induced_form(j);
    const double alpha = w.p_u / n.norm;
    const double beta = w.p_v / n.norm;
    const double dnu1 = beta * n.nu1_u - alpha * n.nu1_v;
    const double dnu2 = beta * n.nu2_u - alpha * n.nu2_v;
    return n.nu1 * dnu2 - n.nu2 * dnu1;
}

CurvatureSample mean_curvature_local(const SurfaceHandle& s, double u, double v, const CurvatureOptions& opts)
{
    const Jet2 j = s.eval_jet2(u, v);
    const NormalJet n = opts.derivatives == NormalDerivatives::Exact ? normal_jet(j, opts.eps_char)
                                                                      : normal_jet_fd(s, u, v, opts.eps_char);
    CurvatureSample r;
    r.u = u;
    r.v = v;
    r.method = CurvatureMethod::LocalFormula;
    r.normal_norm = n.norm;
    r.near_characteristic = n.norm < 100.0 * resolve_eps_char(j, opts.eps_char);
    if (opts.derivatives == NormalDerivatives::Exact && opts.extended_precision && s.has_precise_jet()) {
        r.H = mean_curvature_precise(s.eval_jet2_precise(u, v), opts.eps_jacobian, &r.branch);
        return r;
    }
    if (std::abs(jacobians(j).xy) >= opts.eps_jacobian) {
        r.branch = CurvatureBranch::Jacobian;
        r.H = mean_curvature_jacobian_formula(j, n);
    } else {
        // Tangent plane is vertical here; the quotient is undefined but the
        // projected leaf still has a well-defined signed curvature.
        r.branch = CurvatureBranch::VerticalTangent;
        r.H = mean_curvature_leaf_formula(j, n);
    }
    return r;
}

double signed_curvature_plane(std::array<double, 2> d1, std::array<double, 2> d2)
{
    const double speed2 = d1[0] * d1[0] + d1[1] * d1[1];
    if (!(speed2 > 0.0))
        throw Error(ErrorCode::ZeroSpeed, "signed curvature of a curve with zero velocity");
    return (d1[0] * d2[1] - d1[1] * d2[0]) / (speed2 * std::sqrt(speed2));
}

CurvatureSample mean_curvature_flow_oracle(const SurfaceHandle& s, double u, double v, double ds, int n_steps,
                                           EpsChar eps_char)
{
    const FlowTrace trace = integrate_flow(s, u, v, ds, n_steps, eps_char);
    const std::size_t before = trace.seed_index;
    const std::size_t after = trace.size() - 1 - trace.seed_index;
    if (before == 0 || after == 0) {
        const StopReason why = before == 0 ? trace.stop_backward : trace.stop_forward;
        std::ostringstream os;
        os.precision(17);
        os << "leaf through (" << u << ", " << v << ") stopped immediately: " << to_string(why);
        throw Error(why == StopReason::CharacteristicProximity ? ErrorCode::CharacteristicPoint
                                                               : ErrorCode::FlowEscapedDomain,
                    os.str());
    }
    CurvatureSample r;
    r.u = u;
    r.v = v;
    r.method = CurvatureMethod::FlowOracle;
    r.branch = CurvatureBranch::Trace;
    r.H = projected_signed_curvature(trace, trace.seed_index);
    r.normal_norm = horizontal_normal(s.eval_jet2(u, v)).norm;
    return r;
}

double grid_coordinate(double lo, double hi, int i, int n)
{
    if (n <= 1)
        return 0.5 * (lo + hi);
    if (i == n - 1)
        return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

HMinimalReport is_h_minimal(const SurfaceHandle& s, GridSpec grid, double tol, const CurvatureOptions& opts,
                            double min_normal_norm)
{
    const Domain& d = s.domain();
    HMinimalReport rep;
    rep.tolerance = tol;
    for (int i = 0; i < grid.nu; ++i) {
        const double u = grid_coordinate(d.u_min, d.u_max, i, grid.nu);
        for (int k = 0; k < grid.nv; ++k) {
            const double v = grid_coordinate(d.v_min, d.v_max, k, grid.nv);
            const Jet2 j = s.eval_jet2(u, v);
            const CharacteristicTest c = is_characteristic(j, opts.eps_char);
            if (c.characteristic || c.norm < min_normal_norm) {
                ++rep.skipped_characteristic;
                continue;
            }
            const CurvatureSample h = mean_curvature_local(s, u, v, opts);
            ++rep.evaluated;
            if (h.near_characteristic)
                ++rep.near_characteristic;
            if (std::isnan(rep.max_abs_h))
                continue;
            // NaN sticks so a non-finite curvature can never pass.
            if (rep.evaluated == 1 || !(std::abs(h.H) <= rep.max_abs_h)) {
                rep.max_abs_h = std::abs(h.H);
                rep.argmax_u = u;
                rep.argmax_v = v;
            }
        }
    }
    rep.pass = rep.evaluated > 0 && rep.max_abs_h <= tol;
    return rep;
}

} // namespace heisflow
