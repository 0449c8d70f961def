#include "heisflow/builders.hpp"
#include "heisflow/curvature.hpp"
#include "heisflow/error.hpp"
#include "heisflow/rng.hpp"
#include "heisflow/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace heisflow;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no Error thrown";
    return ErrorCode::InvalidSpec;
}

Series poly(std::initializer_list<std::pair<double, int>> terms)
{
    Series s;
    for (auto [c, k] : terms)
        s.terms.push_back({TermKind::Poly, c, k});
    return s;
}

RuledSpec circle_lift_with_theta_s()
{
    RuledSpec spec;
    spec.curve = circle_lift_curve();
    spec.angle.theta = poly({{1.0, 1}});
    spec.v_min = 0.2;
    spec.v_max = 1.0;
    return spec;
}

CurveSpec horizontal_line()
{
    CurveSpec c;
    c.x = poly({{1.0, 1}});
    c.s_min = -1.0;
    c.s_max = 1.0;
    return c;
}

} // namespace

TEST(Series, Derivatives)
{
    Series s;
    s.terms = {{TermKind::Poly, 2.0, 3}, {TermKind::Cos, 0.5, 2}, {TermKind::Sin, -1.0, 1}};
    const double x = 0.7;
    EXPECT_NEAR(s(x), 2 * x * x * x + 0.5 * std::cos(2 * x) - std::sin(x), 1e-15);
    EXPECT_NEAR(s.derivative(x, 1), 6 * x * x - std::sin(2 * x) - std::cos(x), 1e-15);
    EXPECT_NEAR(s.derivative(x, 2), 12 * x - 2 * std::cos(2 * x) + std::sin(x), 1e-14);
    EXPECT_NEAR(s.derivative(x, 3), 12 + 4 * std::sin(2 * x) + std::cos(x), 1e-14);
    EXPECT_NEAR(s.derivative(x, 4), 8 * std::cos(2 * x) - std::sin(x), 1e-14);
    const auto j = s.jet(x);
    EXPECT_EQ(j[2], s.derivative(x, 2));
    EXPECT_EQ(poly({{1.0, 0}}).derivative(0.0, 0), 1.0);
    EXPECT_EQ(poly({{1.0, 2}}).derivative(0.0, 0), 0.0);
}

TEST(Series, Validation)
{
    EXPECT_EQ(code_of([] { validate(poly({{1.0, 7}}), "x"); }), ErrorCode::InvalidSpec);
    EXPECT_EQ(code_of([] { validate(poly({{1.0, -1}}), "x"); }), ErrorCode::InvalidSpec);
    EXPECT_EQ(code_of([] { validate(poly({{NAN, 1}}), "x"); }), ErrorCode::InvalidSpec);
    EXPECT_NO_THROW(validate(poly({{1.0, 6}}), "x"));
}

TEST(StraightRuled, ParaboloidImage)
{
    const SurfaceHandle s = build_straight_ruled(paraboloid_spec());
    const double r = std::numbers::sqrt2;
    for (double u : {-0.9, 0.0, 0.5})
        for (double v : {-0.7, 0.3, 1.0}) {
            const Point3 p = s.eval(u, v);
            EXPECT_NEAR(p.x, v / r, 1e-15);
            EXPECT_NEAR(p.y, u + v / r, 1e-15);
            EXPECT_NEAR(p.t, u * u + r * u * v, 1e-15);
            EXPECT_NEAR(p.t, p.y * p.y - p.x * p.x, 1e-14);
        }
}

TEST(StraightRuled, EtaParaboloid)
{
    const RuledSpec spec = paraboloid_spec();
    for (double s : {-1.0, 0.25, 0.8})
        for (double v : {-0.5, 0.0, 0.9})
            EXPECT_NEAR(eval_eta(spec, s, v), 2 * s + 2 * std::numbers::sqrt2 * v, 1e-14);
}

TEST(StraightRuled, HorizontalCurveIsCharacteristic)
{
    RuledSpec spec = circle_lift_with_theta_s();
    spec.v_min = -0.5;
    spec.v_max = 0.5;
    const SurfaceHandle s = build_straight_ruled(spec);
    for (double u : {0.0, 1.0, 4.0}) {
        EXPECT_NEAR(eval_eta(spec, u, 0.0), 0.0, 1e-15);
        EXPECT_TRUE(is_characteristic(s.eval_jet2(u, 0.0)).characteristic);
    }
}

TEST(StraightRuled, NormIsAbsEta)
{
    Rng rng(61);
    for (int n = 0; n < 20; ++n) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const SurfaceHandle s = build_straight_ruled(spec);
        for (int i = 0; i < 50; ++i) {
            const double u = rng.uniform(spec.curve.s_min, spec.curve.s_max), v = rng.uniform(spec.v_min, spec.v_max);
            const double eta = eval_eta(spec, u, v);
            EXPECT_NEAR(horizontal_normal(s.eval_jet2(u, v)).norm, std::abs(eta), 1e-10 * std::max(1.0, std::abs(eta)));
            const InducedFormCoeffs f = induced_form(s.eval_jet2(u, v));
            EXPECT_NEAR(f.p_u, eta, 1e-10 * std::max(1.0, std::abs(eta)));
            EXPECT_NEAR(f.p_v, 0.0, 1e-12);
        }
    }
}

TEST(StraightRuled, EtaZeroSetMatchesCharacteristicFlags)
{
    const RuledSpec spec = paraboloid_spec();
    const SurfaceHandle s = build_straight_ruled(spec);
    int disagreements = 0;
    for (int i = 0; i < 201; ++i)
        for (int k = 0; k < 201; ++k) {
            const double u = grid_coordinate(-1, 1, i, 201), v = grid_coordinate(-1, 1, k, 201);
            const CharacteristicTest t = is_characteristic(s.eval_jet2(u, v));
            const double eta = std::abs(eval_eta(spec, u, v));
            // Outside the band [threshold / 2, 2 threshold] both tests must agree.
            if (eta < 0.5 * t.threshold || eta > 2.0 * t.threshold)
                disagreements += t.characteristic != (eta < t.threshold);
        }
    EXPECT_EQ(disagreements, 0);
}

TEST(StraightRuled, Errors)
{
    RuledSpec degenerate;
    degenerate.curve = horizontal_line();
    degenerate.angle.theta = poly({{0.0, 0}});
    EXPECT_EQ(code_of([&] { build_straight_ruled(degenerate); }), ErrorCode::DegenerateRuling);

    RuledSpec bad_degree = paraboloid_spec();
    bad_degree.curve.x = poly({{1.0, 9}});
    EXPECT_EQ(code_of([&] { build_straight_ruled(bad_degree); }), ErrorCode::InvalidSpec);

    RuledSpec empty = paraboloid_spec();
    empty.v_max = empty.v_min;
    EXPECT_EQ(code_of([&] { build_straight_ruled(empty); }), ErrorCode::InvalidSpec);
}

TEST(LambdaToPlane, PullbackIdentity)
{
    const RuledSpec spec = circle_lift_with_theta_s();
    for (double s : {0.3, 1.7, 4.2})
        for (double v : {0.25, 0.6, 0.95}) {
            const double lambda = lambda_to_plane(spec, s, v);
            const Jet2 src = build_straight_ruled(spec).eval_jet2(s, v);
            EXPECT_LE(contact_residual(src, plane_flow_jet(spec.angle, s, v), lambda), 1e-10);
            const ContactCheck c = contact_factor(src, plane_flow_jet(spec.angle, s, v));
            EXPECT_NEAR(c.lambda, lambda, 1e-12);
            EXPECT_LE(c.residual, 1e-12);
        }
}

TEST(LambdaToPlane, ZeroAlongCurveAndErrors)
{
    RuledSpec spec = paraboloid_spec();
    spec.angle.theta = poly({{1.0, 1}});
    ASSERT_GT(std::abs(eval_eta(spec, 0.5, 0.0)), 0.1);
    EXPECT_EQ(lambda_to_plane(spec, 0.5, 0.0), 0.0);

    EXPECT_EQ(code_of([] { lambda_to_plane(paraboloid_spec(), 0.5, 0.2); }), ErrorCode::ConstantRulingDirection);
    EXPECT_EQ(code_of([] { lambda_to_plane(circle_lift_with_theta_s(), 0.5, 0.0); }), ErrorCode::CharacteristicPoint);
}

TEST(PlaneFlowPatch, JetAtSingularLine)
{
    AngleField theta{poly({{1.0, 1}})};
    const Jet2 j = plane_flow_jet(theta, 0.4, 0.0);
    EXPECT_EQ(j.value, (Point3{0, 0, 0}));
    EXPECT_NEAR(j.dv.x, std::cos(0.4), 1e-15);
    EXPECT_NEAR(j.dv.y, std::sin(0.4), 1e-15);
    EXPECT_EQ(norm(j.du), 0.0);
    EXPECT_EQ(code_of([&] { plane_flow_patch(theta, {0, 1, -0.5, 0.5}); }), ErrorCode::NotRegular);
}

TEST(TangentDevelopable, CircleLift)
{
    const CurveSpec c = circle_lift_curve();
    for (double s : {0.0, 1.0, 3.0})
        EXPECT_NEAR(developable_curvature(c, s), 1.0, 1e-14);
    const SurfaceHandle s = build_tangent_developable(c, 0.2, 1.0);
    const Jet2 j = s.eval_jet2(1.0, 0.5);
    const CurveJet g = c.jet(1.0);
    EXPECT_NEAR(j.value.x, g.value.x + 0.5 * g.d1.x, 1e-15);
    EXPECT_NEAR(j.value.t, g.value.t + 0.5 * g.d1.z, 1e-15);
    EXPECT_TRUE(is_h_minimal(s, {41, 41}, 1e-8).pass);
}

TEST(TangentDevelopable, Errors)
{
    EXPECT_EQ(code_of([] { build_tangent_developable(horizontal_line(), 0.2, 1.0); }), ErrorCode::StraightLine);
    EXPECT_EQ(code_of([] { build_tangent_developable(circle_lift_curve(), -0.5, 1.0); }), ErrorCode::ZeroInRange);

    CurveSpec flat = circle_lift_curve();
    flat.t.terms.clear();
    EXPECT_EQ(code_of([&] { build_tangent_developable(flat, 0.2, 1.0); }), ErrorCode::NotHorizontal);

    CurveSpec fast;
    fast.x.terms = {{TermKind::Cos, 2.0, 1}};
    fast.y.terms = {{TermKind::Sin, 2.0, 1}};
    fast.t = poly({{-8.0, 1}});
    fast.s_max = 6.0;
    EXPECT_EQ(code_of([&] { build_tangent_developable(fast, 0.2, 1.0); }), ErrorCode::NotUnitSpeed);
}

TEST(Cylinder, StraightProfileIsVerticalPlane)
{
    CurveSpec line;
    line.x = poly({{0.6, 1}});
    line.y = poly({{0.8, 1}, {1.0, 0}});
    line.s_min = -1.0;
    line.s_max = 1.0;
    const SurfaceHandle s = build_cylinder(line, -1.0, 1.0);
    EXPECT_TRUE(is_h_minimal(s, {21, 21}, 1e-12).pass);
    const HorizontalVec nu = unit_horizontal_normal(s.eval_jet2(0.1, 0.2));
    EXPECT_NEAR(nu.h1, 0.8, 1e-15);
    EXPECT_NEAR(nu.h2, -0.6, 1e-15);
}

TEST(Cylinder, EmptyLocusAndClosedForm)
{
    const SurfaceHandle s = catalog_get("cylinder");
    for (double u : {0.0, 2.0, 5.0})
        for (double v : {-1.0, 0.5}) {
            const Jet2 j = s.eval_jet2(u, v);
            EXPECT_NEAR(horizontal_normal(j).norm, 1.0, 1e-15);
            // d(p_v)/du - d(p_u)/dv
            const Jet2 ju = s.eval_jet2(u + 1e-6, v);
            const Jet2 jv = s.eval_jet2(u, v + 1e-6);
            const double curl = (induced_form(ju).p_v - induced_form(j).p_v) / 1e-6 -
                                (induced_form(jv).p_u - induced_form(j).p_u) / 1e-6;
            EXPECT_NEAR(curl, 0.0, 1e-6);
        }
}

TEST(Cylinder, Errors)
{
    CurveSpec lifted = circle_lift_curve();
    EXPECT_EQ(code_of([&] { build_cylinder(lifted, -1.0, 1.0); }), ErrorCode::NotRegularProfile);
    CurveSpec point;
    point.x = poly({{1.0, 0}});
    EXPECT_EQ(code_of([&] { build_cylinder(point, -1.0, 1.0); }), ErrorCode::NotRegularProfile);
    CatalogParams p;
    p.radius = -1.0;
    EXPECT_EQ(code_of([&] { catalog_get("cylinder", p); }), ErrorCode::InvalidSpec);
}

TEST(Graph, PolynomialAndGeneric)
{
    const std::vector<Monomial> terms{{1.0, 0, 2}, {-1.0, 2, 0}};
    const GraphFunction f = polynomial_graph(terms);
    const GraphJet g = f(0.3, -0.4);
    EXPECT_NEAR(g.f, 0.16 - 0.09, 1e-15);
    EXPECT_NEAR(g.fx, -0.6, 1e-15);
    EXPECT_NEAR(g.fy, -0.8, 1e-15);
    EXPECT_EQ(g.fxx, -2.0);
    EXPECT_EQ(g.fyy, 2.0);
    EXPECT_EQ(g.fxy, 0.0);

    const SurfaceHandle a = build_graph(f, {-1, 1, -1, 1});
    const SurfaceHandle b = build_polynomial_graph(terms, {-1, 1, -1, 1});
    const Jet2 ja = a.eval_jet2(0.3, -0.4), jb = b.eval_jet2(0.3, -0.4);
    EXPECT_EQ(ja.value, jb.value);
    EXPECT_EQ(ja.duu, jb.duu);
    EXPECT_TRUE(is_h_minimal(b, {41, 41}, 1e-8).pass);
    EXPECT_EQ(code_of([] { build_polynomial_graph({{1.0, -1, 0}}, {-1, 1, -1, 1}); }), ErrorCode::InvalidSpec);
}

TEST(Catalog, NamesAndErrors)
{
    for (const std::string& name : catalog_names())
        EXPECT_EQ(catalog_get(name).name(), name);
    EXPECT_EQ(code_of([] { catalog_get("torus"); }), ErrorCode::UnknownName);
    EXPECT_EQ(code_of([] { build_cone({-1, 1, 0, 1}); }), ErrorCode::InvalidSpec);
}

TEST(Catalog, VerticalPlaneInducedForm)
{
    const InducedFormCoeffs f = induced_form(catalog_get("vertical_plane_x0").eval_jet2(-0.3, 0.7));
    EXPECT_EQ(f.p_u, 0.0);
    EXPECT_EQ(f.p_v, 1.0);
}

TEST(Catalog, CustomDomain)
{
    CatalogParams p;
    p.domain = Domain{-3.0, -1.0, 0.0, 1.0};
    const SurfaceHandle cone = catalog_get("cone_lower", p);
    EXPECT_EQ(cone.domain().u_min, -3.0);
    EXPECT_NEAR(mean_curvature_local(cone, -3.0, 0.5).H, 1.0 / (-3.0 * std::pow(37.0, 1.5)), 1e-15);
}

TEST(ContactMap, VerticalPlaneToPlaneT0)
{
    // (0, u, v) -> (u v, u, 0) carries dv to a multiple of dv.
    for (double u : {-0.8, 0.3, 1.5})
        for (double v : {-1.0, 0.4}) {
            Jet2 src;
            src.value = {0, u, v};
            src.du = {0, 1, 0};
            src.dv = {0, 0, 1};
            Jet2 img;
            img.value = {u * v, u, 0};
            img.du = {v, 1, 0};
            img.dv = {u, 0, 0};
            const ContactCheck c = contact_factor(src, img);
            EXPECT_NEAR(c.lambda, -2.0 * u * u, 1e-14);
            EXPECT_LE(c.residual, 1e-14);
        }
}
