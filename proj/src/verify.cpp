#include "heisflow/verify.hpp"

#include "heisflow/curvature.hpp"
#include "heisflow/error.hpp"
#include "heisflow/flow.hpp"
#include "heisflow/horizontal.hpp"
#include "heisflow/locus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace heisflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

CheckResult make_check(int criterion, std::string name, double value, double tol, std::string detail = {})
{
    return {criterion, std::move(name), value <= tol, value, tol, std::move(detail)};
}

CheckResult failed_check(int criterion, std::string name, double tol, std::string detail)
{
    return {criterion, std::move(name), false, std::numeric_limits<double>::infinity(), tol, std::move(detail)};
}

Series random_poly(Rng& rng, int max_degree, double scale)
{
    Series s;
    for (int k = 0; k <= max_degree; ++k)
        s.terms.push_back({TermKind::Poly, rng.uniform(-scale, scale), k});
    return s;
}

void add_trig(Rng& rng, Series& s, double scale)
{
    const TermKind kind = rng.uniform() < 0.5 ? TermKind::Cos : TermKind::Sin;
    s.terms.push_back({kind, rng.uniform(-scale, scale), rng.integer(1, 2)});
}

Point3 random_point(Rng& rng, double r) { return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)}; }

Vec3 random_vec(Rng& rng, double r) { return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)}; }

Jet2 random_jet(Rng& rng)
{
    Jet2 j;
    j.value = random_point(rng, 2.0);
    j.du = random_vec(rng, 1.0);
    j.dv = random_vec(rng, 1.0);
    j.duu = random_vec(rng, 1.0);
    j.duv = random_vec(rng, 1.0);
    j.dvv = random_vec(rng, 1.0);
    return j;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

double point_rel(const Point3& a, const Point3& b)
{
    return std::max({rel(a.x, b.x), rel(a.y, b.y), rel(a.t, b.t)});
}

double frame_diff(const FrameVector& a, const FrameVector& b)
{
    return std::max({std::abs(a.a1 - b.a1), std::abs(a.a2 - b.a2), std::abs(a.a3 - b.a3)});
}

FrameVector random_frame(Rng& rng, const Point3& base)
{
    return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), base};
}

std::string grid_label(int nu, int nv) { return std::to_string(nu) + "x" + std::to_string(nv) + " grid"; }

} // namespace

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool VerifyReport::criterion_passed(int criterion) const
{
    bool any = false;
    for (const CheckResult& c : checks) {
        if (c.criterion != criterion)
            continue;
        any = true;
        if (!c.passed)
            return false;
    }
    return any;
}

RuledSpec random_ruled_spec(Rng& rng)
{
    RuledSpec spec;
    spec.curve.x = random_poly(rng, 3, 1.0);
    spec.curve.y = random_poly(rng, 3, 1.0);
    spec.curve.t = random_poly(rng, 3, 1.0);
    add_trig(rng, spec.curve.x, 0.5);
    add_trig(rng, spec.curve.y, 0.5);
    spec.curve.s_min = -1.0;
    spec.curve.s_max = 1.0;
    const double slope = rng.uniform(0.3, 1.5) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    spec.angle.theta.terms = {{TermKind::Poly, rng.uniform(-std::numbers::pi, std::numbers::pi), 0},
                              {TermKind::Poly, slope, 1},
                              {TermKind::Poly, rng.uniform(-0.5, 0.5), 2}};
    spec.v_min = -0.5;
    spec.v_max = 0.5;
    return spec;
}

RuledSpec random_buildable_ruled_spec(Rng& rng, int* rejected)
{
    for (;;) {
        RuledSpec spec = random_ruled_spec(rng);
        try {
            (void)build_straight_ruled(spec);
            return spec;
        } catch (const Error&) {
            if (rejected)
                ++*rejected;
        }
    }
}

// 1
std::vector<CheckResult> check_cylinder_curvature()
{
    std::vector<CheckResult> out;
    for (double R : {0.5, 1.0, 2.0, 5.0}) {
        CatalogParams p;
        p.radius = R;
        const SurfaceHandle s = catalog_get("cylinder", p);
        const Domain& d = s.domain();
        double worst = 0.0;
        for (int i = 0; i < 101; ++i)
            for (int k = 0; k < 101; ++k) {
                const double u = grid_coordinate(d.u_min, d.u_max, i, 101);
                const double v = grid_coordinate(d.v_min, d.v_max, k, 101);
                worst = std::max(worst, std::abs(mean_curvature_local(s, u, v).H - 1.0 / R));
            }
        out.push_back(make_check(1, "cylinder R=" + fmt(R) + ": max |H - 1/R|", worst, 1e-10, grid_label(101, 101)));
    }
    return out;
}

// 2
std::vector<CheckResult> check_cone_curvature()
{
    const SurfaceHandle s = catalog_get("cone_lower");
    const Domain& d = s.domain();
    double worst_h = 0.0, worst_nu = 0.0;
    for (int i = 0; i < 101; ++i)
        for (int k = 0; k < 101; ++k) {
            const double u = grid_coordinate(d.u_min, d.u_max, i, 101);
            const double v = grid_coordinate(d.v_min, d.v_max, k, 101);
            const double q = 1.0 + 4.0 * u * u;
            const double h_exact = 1.0 / (u * std::pow(q, 1.5));
            worst_h = std::max(worst_h, std::abs(mean_curvature_local(s, u, v).H - h_exact));
            const HorizontalVec nu = unit_horizontal_normal(s.eval_jet2(u, v));
            const double r = std::sqrt(q);
            worst_nu = std::max(worst_nu, std::abs(nu.h1 - (std::cos(v) - 2.0 * u * std::sin(v)) / r));
            worst_nu = std::max(worst_nu, std::abs(nu.h2 - (std::sin(v) + 2.0 * u * std::cos(v)) / r));
        }
    return {make_check(2, "cone: max |H - 1/(u(1+4u^2)^(3/2))|", worst_h, 1e-10, grid_label(101, 101)),
            make_check(2, "cone: max componentwise |nu^h - closed form|", worst_nu, 1e-10, grid_label(101, 101))};
}

// 3
std::vector<CheckResult> check_paraboloid()
{
    const SurfaceHandle s = catalog_get("paraboloid");
    std::vector<CheckResult> out;

    const LocusResult locus = find_characteristic_locus(s);
    double worst = 0.0;
    for (const auto& line : locus.polylines)
        for (const LocusPoint& p : line)
            worst = std::max(worst, std::abs(p.point.x + p.point.y));
    const std::size_t n = locus.point_count();
    if (n == 0)
        out.push_back(failed_check(3, "paraboloid locus: max |x + y|", 1e-6, "no characteristic points found"));
    else
        out.push_back(make_check(3, "paraboloid locus: max |x + y|", worst, 1e-6, std::to_string(n) + " locus points"));

    const HMinimalReport rep = is_h_minimal(s, {101, 101}, 1e-8, {}, 1e-4);
    std::string detail = std::to_string(rep.evaluated) + " points with |N^h| >= 1e-4";
    if (rep.empty())
        out.push_back(failed_check(3, "paraboloid: max |H|", 1e-8, "no points evaluated"));
    else
        out.push_back(make_check(3, "paraboloid: max |H|", rep.max_abs_h, 1e-8, detail));
    return out;
}

// 4
std::vector<CheckResult> check_ruled_minimal(std::uint64_t seed)
{
    Rng rng(seed);
    int rejected = 0, evaluated = 0, skipped = 0;
    double worst = 0.0;
    bool ok = true;
    for (int n = 0; n < 100; ++n) {
        const RuledSpec spec = random_buildable_ruled_spec(rng, &rejected);
        const HMinimalReport rep = is_h_minimal(build_straight_ruled(spec), {41, 41}, 1e-8);
        if (rep.empty() || std::isnan(rep.max_abs_h))
            ok = false;
        worst = std::max(worst, rep.max_abs_h);
        evaluated += rep.evaluated;
        skipped += rep.skipped_characteristic;
    }
    CheckResult c = make_check(4, "100 random straight ruled surfaces: max |H|", worst, 1e-8,
                               std::to_string(evaluated) + " points, " + std::to_string(skipped) +
                                   " characteristic skipped, " + std::to_string(rejected) + " draws rejected");
    c.passed = c.passed && ok;
    return {c};
}

// 5
std::vector<CheckResult> check_straight_leaves()
{
    std::vector<CheckResult> out;
    for (const char* name : {"paraboloid", "vertical_plane_x0", "plane_t0", "plane_flow_patch", "circle_lift_developable"}) {
        const SurfaceHandle s = catalog_get(name);
        const Domain& d = s.domain();
        double worst = 0.0;
        int leaves = 0;
        for (int i = 1; i <= 5; ++i)
            for (int k = 1; k <= 5; ++k) {
                const double u = grid_coordinate(d.u_min, d.u_max, i, 7);
                const double v = grid_coordinate(d.v_min, d.v_max, k, 7);
                if (horizontal_normal(s.eval_jet2(u, v)).norm < 1e-3)
                    continue;
                const FlowTrace tr = integrate_flow(s, u, v, 1e-2, 400);
                if (tr.size() < 3)
                    continue;
                ++leaves;
                for (double a : projected_second_derivative(tr))
                    worst = std::max(worst, a);
            }
        if (leaves == 0)
            out.push_back(failed_check(5, std::string(name) + ": max |pi''| along leaves", 1e-4, "no leaves traced"));
        else
            out.push_back(make_check(5, std::string(name) + ": max |pi''| along leaves", worst, 1e-4,
                                     std::to_string(leaves) + " leaves, ds = 0.01"));
    }
    return out;
}

// 6
std::vector<CheckResult> check_oracle_agreement(std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<CheckResult> out;
    for (const std::string& name : catalog_names()) {
        const SurfaceHandle s = catalog_get(name);
        const Domain& d = s.domain();
        const double mu = 0.02 * d.u_span(), mv = 0.02 * d.v_span();
        double worst = 0.0;
        int done = 0, attempts = 0;
        while (done < 200 && attempts < 20000) {
            ++attempts;
            const double u = rng.uniform(d.u_min + mu, d.u_max - mu);
            const double v = rng.uniform(d.v_min + mv, d.v_max - mv);
            try {
                const CurvatureSample local = mean_curvature_local(s, u, v);
                if (local.near_characteristic)
                    continue;
                const CurvatureSample oracle = mean_curvature_flow_oracle(s, u, v);
                worst = std::max(worst, std::abs(local.H - oracle.H));
                ++done;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::CharacteristicPoint && e.code() != ErrorCode::FlowEscapedDomain)
                    throw;
            }
        }
        std::string label = name + ": max |H_local - kappa_s(leaf)|";
        if (done < 200)
            out.push_back(failed_check(6, label, 1e-3, "only " + std::to_string(done) + " usable points"));
        else
            out.push_back(make_check(6, label, worst, 1e-3, std::to_string(attempts) + " draws for 200 points"));
    }
    return out;
}

// 7
std::vector<CheckResult> check_ruled_form(std::uint64_t seed)
{
    Rng rng(seed ^ 0x7u);
    double worst_pu = 0.0, worst_pv = 0.0, worst_norm = 0.0;
    for (int n = 0; n < 100; ++n) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const SurfaceHandle surf = build_straight_ruled(spec);
        for (int m = 0; m < 100; ++m) {
            const double s = rng.uniform(spec.curve.s_min, spec.curve.s_max);
            const double v = rng.uniform(spec.v_min, spec.v_max);
            const Jet2 j = surf.eval_jet2(s, v);
            const double eta = eval_eta(spec, s, v);
            const InducedFormCoeffs w = induced_form(j);
            const double scale = std::max(1.0, std::abs(eta));
            worst_pu = std::max(worst_pu, std::abs(w.p_u - eta) / scale);
            worst_pv = std::max(worst_pv, std::abs(w.p_v) / scale);
            worst_norm = std::max(worst_norm, std::abs(horizontal_normal(j).norm - std::abs(eta)) / scale);
        }
    }
    const std::string detail = "10^4 (s, v) over 100 specs, relative to max(1, |eta|)";
    return {make_check(7, "ruled: |p_u - eta|", worst_pu, 1e-10, detail),
            make_check(7, "ruled: |p_v|", worst_pv, 1e-10, detail),
            make_check(7, "ruled: | |N^h| - |eta| |", worst_norm, 1e-10, detail)};
}

// 8
std::vector<CheckResult> check_contact_factors(std::uint64_t seed)
{
    Rng rng(seed ^ 0x8u);
    std::vector<CheckResult> out;

    std::vector<RuledSpec> specs;
    RuledSpec circle;
    circle.curve = circle_lift_curve();
    circle.angle.theta.terms = {{TermKind::Poly, 1.0, 1}};
    circle.v_min = 0.2;
    circle.v_max = 1.0;
    specs.push_back(circle);
    for (int n = 0; n < 50; ++n)
        specs.push_back(random_buildable_ruled_spec(rng));

    double worst = 0.0;
    int points = 0;
    for (const RuledSpec& spec : specs) {
        const SurfaceHandle ruled = build_straight_ruled(spec);
        for (int m = 0; m < 100; ++m) {
            const double s = rng.uniform(spec.curve.s_min, spec.curve.s_max);
            const double v = rng.uniform(spec.v_min, spec.v_max);
            double lambda = 0.0;
            try {
                lambda = lambda_to_plane(spec, s, v);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::CharacteristicPoint)
                    continue;
                throw;
            }
            const Jet2 src = ruled.eval_jet2(s, v);
            const Jet2 img = plane_flow_jet(spec.angle, s, v);
            const InducedFormCoeffs wi = induced_form(img);
            const double scale = std::max({1.0, std::abs(wi.p_u), std::abs(wi.p_v)});
            worst = std::max(worst, contact_residual(src, img, lambda) / scale);
            ++points;
        }
    }
    out.push_back(make_check(8, "ruled -> plane: |omega_plane - lambda omega_ruled|", worst, 1e-10,
                             std::to_string(points) + " points over " + std::to_string(specs.size()) + " specs"));

    // Coordinate plane x = 0 sent into t = 0: omega of the image against -2u^2 dv.
    const auto plane_map_residual = [&](bool transposed) {
        double r = 0.0;
        for (int m = 0; m < 1000; ++m) {
            const double u = rng.uniform(-1.0, 1.0);
            const double v = rng.uniform(-1.0, 1.0);
            Jet2 src;
            src.value = {0.0, u, v};
            src.du = {0.0, 1.0, 0.0};
            src.dv = {0.0, 0.0, 1.0};
            Jet2 img;
            if (!transposed) {
                img.value = {u * v, v, 0.0};
                img.du = {v, 0.0, 0.0};
                img.dv = {u, 1.0, 0.0};
            } else {
                img.value = {u * v, u, 0.0};
                img.du = {v, 1.0, 0.0};
                img.dv = {u, 0.0, 0.0};
            }
            r = std::max(r, contact_residual(src, img, -2.0 * u * u));
        }
        return r;
    };
    out.push_back(make_check(8, "plane map (0,u,v) -> (uv,v,0): |omega_image - (-2u^2) omega_source|",
                             plane_map_residual(false), 1e-10,
                             "the image form is -2v^2 du, which is not a multiple of dv"));
    out.push_back(make_check(8, "plane map (0,u,v) -> (uv,u,0): |omega_image - (-2u^2) omega_source|",
                             plane_map_residual(true), 1e-10, "supplementary: map with the second slot u"));
    return out;
}

// 9
std::vector<CheckResult> check_circle_developable()
{
    std::vector<CheckResult> out;
    const CurveSpec c = circle_lift_curve();
    try {
        const SurfaceHandle s = build_tangent_developable(c, 0.2, 1.0);
        out.push_back(make_check(9, "circle lift tangent developable: construction", 0.0, 0.0, "built"));
        double worst_k = 0.0, worst_h = 0.0, worst_speed = 0.0;
        for (int i = 0; i <= 128; ++i) {
            const double t = grid_coordinate(c.s_min, c.s_max, i, 129);
            const CurveJet j = c.jet(t);
            worst_k = std::max(worst_k, std::abs(developable_curvature(c, t) - 1.0));
            worst_h = std::max(worst_h, std::abs(contact_eval(j.value, j.d1)));
            worst_speed = std::max(worst_speed, std::abs(std::hypot(j.d1.x, j.d1.y) - 1.0));
        }
        out.push_back(make_check(9, "circle lift: |kappa - 1|", worst_k, 1e-10, "129 samples"));
        out.push_back(make_check(9, "circle lift: horizontality |omega(gamma')|", worst_h, 1e-10, "129 samples"));
        out.push_back(make_check(9, "circle lift: | |pi'| - 1 |", worst_speed, 1e-10, "129 samples"));
        const HMinimalReport rep = is_h_minimal(s, {101, 101}, 1e-8);
        if (rep.empty())
            out.push_back(failed_check(9, "circle lift developable: max |H|", 1e-8, "no points evaluated"));
        else
            out.push_back(make_check(9, "circle lift developable: max |H|", rep.max_abs_h, 1e-8, grid_label(101, 101)));
    } catch (const Error& e) {
        out.push_back(failed_check(9, "circle lift tangent developable: construction", 0.0, e.what()));
    }
    return out;
}

// 10
std::vector<CheckResult> check_core_invariants(std::uint64_t seed)
{
    Rng rng(seed ^ 0xAu);
    constexpr int n = 10000;
    std::vector<CheckResult> out;

    double assoc = 0.0, linv = 0.0, omega_xy = 0.0, clock = 0.0, anti = 0.0, jnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point3 p = random_point(rng, 10.0), q = random_point(rng, 10.0), r = random_point(rng, 10.0);
        assoc = std::max(assoc, point_rel(group_mul(group_mul(p, q), r), group_mul(p, group_mul(q, r))));
        const Point3 g = random_point(rng, 10.0);
        linv = std::max(linv, rel(kc_distance(group_mul(g, p), group_mul(g, q)), kc_distance(p, q)));
        omega_xy = std::max(omega_xy, std::abs(contact_eval(p, frame_to_euclidean(frame_x(p)))));
        omega_xy = std::max(omega_xy, std::abs(contact_eval(p, frame_to_euclidean(frame_y(p)))));
        clock = std::max(clock, frame_diff(h_wedge(frame_x(p), frame_y(p)), frame_t(p)));
        clock = std::max(clock, frame_diff(h_wedge(frame_y(p), frame_t(p)), frame_x(p)));
        clock = std::max(clock, frame_diff(h_wedge(frame_t(p), frame_x(p)), frame_y(p)));
        const FrameVector a = random_frame(rng, p), b = random_frame(rng, p);
        const FrameVector ab = h_wedge(a, b), ba = h_wedge(b, a);
        anti = std::max({anti, std::abs(ab.a1 + ba.a1), std::abs(ab.a2 + ba.a2), std::abs(ab.a3 + ba.a3)});
        const HorizontalVec h{a.a1, a.a2, p};
        jnorm = std::max(jnorm, std::abs(h_norm(j_rotate(h)) - h_norm(h)));
    }
    out.push_back(make_check(10, "group associativity (relative)", assoc, 1e-12));
    out.push_back(make_check(10, "Koranyi-Cygan left invariance (relative)", linv, 1e-10));
    out.push_back(make_check(10, "omega(X), omega(Y)", omega_xy, 1e-14));
    out.push_back(make_check(10, "clock rule X^Y=T, Y^T=X, T^X=Y", clock, 0.0));
    out.push_back(make_check(10, "wedge antisymmetry", anti, 1e-12));
    out.push_back(make_check(10, "|J v| = |v|", jnorm, 0.0));

    double compat = 0.0, jv = 0.0;
    int jv_points = 0;
    for (int i = 0; i < n; ++i) {
        const Jet2 j = random_jet(rng);
        const HorizontalNormal nh = horizontal_normal(j);
        const Vec3 N = cross(j.du, j.dv);
        const double scale = std::max(1.0, norm(N) * norm(horizontal_normal_euclidean(nh)));
        compat = std::max(compat, std::abs(normal_compatibility(j) - (nh.n1 * nh.n1 + nh.n2 * nh.n2)) / scale);

        if (nh.norm < 1e-3)
            continue;
        ++jv_points;
        // J nu^h pushed back: the flow direction; omega must vanish on it.
        const FlowDirection f = flow_direction(j);
        const Vec3 w = f.du * j.du + f.dv * j.dv;
        const HorizontalVec nu = unit_horizontal_normal(j);
        const HorizontalVec jnu = j_rotate(nu);
        const double wscale = std::max(1.0, norm(j.du) + norm(j.dv)) / nh.norm;
        jv = std::max({jv, std::abs(contact_eval(j.value, w)) / wscale, std::abs(w.x - jnu.h1) / wscale,
                       std::abs(w.y - jnu.h2) / wscale});
    }
    out.push_back(make_check(10, "N . N^h = n1^2 + n2^2 (relative)", compat, 1e-10, "10^4 random jets"));
    out.push_back(make_check(10, "omega_S(J nu^h) = 0 and sigma_*(beta, -alpha) = J nu^h", jv, 1e-10,
                             std::to_string(jv_points) + " jets with |N^h| >= 1e-3"));

    // Reparametrisation invariance on the cone and a random cubic graph.
    std::vector<Monomial> f;
    for (int kx = 0; kx <= 3; ++kx)
        for (int ky = 0; ky + kx <= 3; ++ky)
            f.push_back({rng.uniform(-1.0, 1.0), kx, ky});
    const SurfaceHandle surfaces[2] = {catalog_get("cone_lower"), build_polynomial_graph(f, {-1, 1, -1, 1})};
    double nu_diff = 0.0, h_diff = 0.0;
    int reparam_points = 0;
    for (int i = 0; i < n; ++i) {
        const SurfaceHandle& s = surfaces[i % 2];
        const Domain& d = s.domain();
        const double u = rng.uniform(d.u_min, d.u_max), v = rng.uniform(d.v_min, d.v_max);
        if (horizontal_normal(s.eval_jet2(u, v)).norm < 1e-2)
            continue;
        AffineMap2 m;
        do {
            m.a = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        } while (m.det() < 0.1);
        m.b = {u, v};
        const SurfaceHandle r = reparametrize_affine(s, m, {-1e-9, 1e-9, -1e-9, 1e-9});
        const HorizontalVec a = unit_horizontal_normal(s.eval_jet2(u, v));
        const HorizontalVec b = unit_horizontal_normal(r.eval_jet2(0.0, 0.0));
        nu_diff = std::max({nu_diff, std::abs(a.h1 - b.h1), std::abs(a.h2 - b.h2)});
        h_diff = std::max(h_diff, rel(mean_curvature_local(s, u, v).H, mean_curvature_local(r, 0.0, 0.0).H));
        ++reparam_points;
    }
    const std::string detail = std::to_string(reparam_points) + " points, cone and cubic graph";
    out.push_back(make_check(10, "reparametrisation invariance of nu^h", nu_diff, 1e-10, detail));
    out.push_back(make_check(10, "reparametrisation invariance of H (relative)", h_diff, 1e-10, detail));
    return out;
}

VerifyReport run_suite(std::string_view suite, std::uint64_t seed)
{
    VerifyReport r;
    r.suite = std::string(suite);
    r.seed = seed;
    const auto append = [&](std::vector<CheckResult> v) {
        for (CheckResult& c : v)
            r.checks.push_back(std::move(c));
    };
    const bool all = suite == "all";
    if (!all && suite != "core" && suite != "examples" && suite != "minimal")
        throw Error(ErrorCode::UnknownName, "unknown suite '" + std::string(suite) + "'");
    if (all || suite == "examples") {
        append(check_cylinder_curvature());
        append(check_cone_curvature());
        append(check_paraboloid());
    }
    if (all || suite == "minimal")
        append(check_ruled_minimal(seed));
    if (all || suite == "minimal")
        append(check_straight_leaves());
    if (all || suite == "examples")
        append(check_oracle_agreement(seed));
    if (all || suite == "minimal")
        append(check_ruled_form(seed));
    if (all || suite == "examples") {
        append(check_contact_factors(seed));
        append(check_circle_developable());
    }
    if (all || suite == "core")
        append(check_core_invariants(seed));
    return r;
}

std::string report_to_json(const VerifyReport& r)
{
    nlohmann::ordered_json doc;
    doc["suite"] = r.suite;
    doc["seed"] = r.seed;
    doc["passed"] = r.passed();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& c : r.checks) {
        nlohmann::ordered_json j;
        j["criterion"] = c.criterion;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
        j["tolerance"] = c.tolerance;
        j["detail"] = c.detail;
        checks.push_back(j);
    }
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

} // namespace heisflow
