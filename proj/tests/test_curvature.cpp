#include "heisflow/builders.hpp"
#include "heisflow/curvature.hpp"
#include "heisflow/error.hpp"
#include "heisflow/rng.hpp"
#include "heisflow/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace heisflow;

namespace {

double cone_h(double u) { return 1.0 / (u * std::pow(1.0 + 4.0 * u * u, 1.5)); }

SurfaceHandle wide_cone() { return build_cone({-2.0, -0.5, -1.0, 7.0}); }

CurveSpec ellipse(double a, double b)
{
    CurveSpec c;
    c.x.terms = {{TermKind::Cos, a, 1}};
    c.y.terms = {{TermKind::Sin, b, 1}};
    c.s_min = 0.0;
    c.s_max = 2.0 * std::numbers::pi;
    return c;
}

} // namespace

TEST(MeanCurvature, CylinderIsInverseRadius)
{
    for (double R : {0.5, 1.0, 2.0, 5.0}) {
        CatalogParams p;
        p.radius = R;
        const SurfaceHandle s = catalog_get("cylinder", p);
        for (double u : {0.0, 1.0, 3.0, 6.0})
            for (double v : {-1.0, 0.0, 0.8})
                EXPECT_NEAR(mean_curvature_local(s, u, v).H, 1.0 / R, 1e-12);
    }
}

TEST(MeanCurvature, EllipticCylinderIsProfileCurvature)
{
    const double a = 2.0, b = 0.5;
    const SurfaceHandle s = build_cylinder(ellipse(a, b), -1.0, 1.0);
    for (double u : {0.0, 0.4, 1.3, 2.9, 5.0}) {
        const double k = a * b / std::pow(a * a * std::sin(u) * std::sin(u) + b * b * std::cos(u) * std::cos(u), 1.5);
        const CurvatureSample h = mean_curvature_local(s, u, 0.25);
        EXPECT_NEAR(h.H, k, 1e-12);
        EXPECT_EQ(h.branch, CurvatureBranch::VerticalTangent);
    }
}

TEST(MeanCurvature, ConeClosedForm)
{
    const SurfaceHandle cone = wide_cone();
    EXPECT_NEAR(mean_curvature_local(cone, -1.0, 0.0).H, -std::pow(5.0, -1.5), 1e-15);
    EXPECT_NEAR(-std::pow(5.0, -1.5), -0.089443, 1e-6);
    Rng rng(47);
    for (int i = 0; i < 500; ++i) {
        const double u = rng.uniform(-2.0, -0.5), v = rng.uniform(0.0, 6.28);
        const CurvatureSample h = mean_curvature_local(cone, u, v);
        EXPECT_NEAR(h.H, cone_h(u), 1e-12);
        EXPECT_EQ(h.branch, CurvatureBranch::Jacobian);
        EXPECT_FALSE(h.characteristic);
    }
}

TEST(MeanCurvature, ParaboloidAndVerticalPlaneVanish)
{
    const SurfaceHandle par = catalog_get("paraboloid");
    for (double s : {-0.9, -0.3, 0.4, 0.95})
        for (double v : {-0.8, 0.5}) {
            if (std::abs(2 * s + 2 * std::numbers::sqrt2 * v) < 1e-2)
                continue;
            EXPECT_LE(std::abs(mean_curvature_local(par, s, v).H), 1e-12);
        }
    const SurfaceHandle plane = catalog_get("vertical_plane_x0");
    const CurvatureSample h = mean_curvature_local(plane, 0.3, 0.3);
    EXPECT_EQ(h.H, 0.0);
    EXPECT_EQ(h.branch, CurvatureBranch::VerticalTangent);
}

TEST(MeanCurvature, CharacteristicThrows)
{
    try {
        mean_curvature_local(catalog_get("plane_t0"), 0.0, 0.0);
        FAIL() << "expected CharacteristicPoint";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CharacteristicPoint);
    }
}

TEST(MeanCurvature, PlaneT0AwayFromOrigin)
{
    // N^h = 2v X - 2u Y, nu = (v, -u)/r, X nu1 + Y nu2 = 0 on the plane t = 0.
    const SurfaceHandle s = catalog_get("plane_t0");
    for (double u : {-0.7, 0.2, 0.9})
        for (double v : {-0.5, 0.6})
            EXPECT_LE(std::abs(mean_curvature_local(s, u, v).H), 1e-13);
}

TEST(MeanCurvature, PreciseAndDoublePathsAgreeAwayFromLocus)
{
    CurvatureOptions plain;
    plain.extended_precision = false;
    const SurfaceHandle cone = wide_cone();
    const SurfaceHandle dev = catalog_get("circle_lift_developable");
    for (double u : {-1.8, -1.1, -0.6}) {
        EXPECT_NEAR(mean_curvature_local(cone, u, 0.7, plain).H, mean_curvature_local(cone, u, 0.7).H, 1e-12);
        EXPECT_NEAR(mean_curvature_local(dev, -u, 0.5, plain).H, mean_curvature_local(dev, -u, 0.5).H, 1e-10);
    }
}

TEST(MeanCurvature, FiniteDifferenceNormalDerivatives)
{
    const SurfaceHandle cone = wide_cone();
    for (double u : {-1.5, -0.9})
        for (double v : {0.5, 3.0}) {
            const NormalJet ex = normal_jet(cone.eval_jet2(u, v));
            const NormalJet fd = normal_jet_fd(cone, u, v);
            EXPECT_NEAR(fd.nu1_u, ex.nu1_u, 1e-6);
            EXPECT_NEAR(fd.nu1_v, ex.nu1_v, 1e-6);
            EXPECT_NEAR(fd.nu2_u, ex.nu2_u, 1e-6);
            EXPECT_NEAR(fd.nu2_v, ex.nu2_v, 1e-6);
            CurvatureOptions opts;
            opts.derivatives = NormalDerivatives::FiniteDifference;
            EXPECT_NEAR(mean_curvature_local(cone, u, v, opts).H, cone_h(u), 1e-6);
        }
}

TEST(MeanCurvature, JacobianAndLeafFormulasAgree)
{
    Rng rng(53);
    for (int n = 0; n < 20; ++n) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const SurfaceHandle s = build_straight_ruled(spec);
        const SurfaceHandle cone = wide_cone();
        for (int i = 0; i < 20; ++i) {
            const double u = rng.uniform(-2.0, -0.5), v = rng.uniform(0.0, 6.0);
            const Jet2 j = cone.eval_jet2(u, v);
            const NormalJet nj = normal_jet(j);
            EXPECT_NEAR(mean_curvature_jacobian_formula(j, nj), mean_curvature_leaf_formula(j, nj), 1e-12);

            const double a = rng.uniform(-0.9, 0.9), b = rng.uniform(-0.45, 0.45);
            const Jet2 r = s.eval_jet2(a, b);
            const NormalJet rn = normal_jet(r);
            if (rn.norm < 1e-2 || std::abs(jacobians(r).xy) < 1e-2)
                continue;
            const double scale = 1.0 / (rn.norm * std::abs(jacobians(r).xy));
            EXPECT_NEAR(mean_curvature_jacobian_formula(r, rn), mean_curvature_leaf_formula(r, rn), 1e-11 * (1 + scale));
        }
    }
}

TEST(MeanCurvature, GraphReducesToDivergence)
{
    // For sigma = (u, v, f) the Jacobian d(x,y) is 1 and the formula reduces
    // to d nu1/du + d nu2/dv.
    const SurfaceHandle g = build_polynomial_graph({{1.0, 0, 2}, {-1.0, 2, 0}, {0.3, 1, 2}}, {-1, 1, -1, 1});
    for (double u : {-0.6, 0.2, 0.8})
        for (double v : {-0.7, 0.5}) {
            const Jet2 j = g.eval_jet2(u, v);
            const NormalJet n = normal_jet(j);
            if (n.norm < 1e-3)
                continue;
            EXPECT_EQ(jacobians(j).xy, 1.0);
            EXPECT_NEAR(mean_curvature_local(g, u, v).H, n.nu1_u + n.nu2_v, 1e-12);
        }
}

TEST(MeanCurvature, ReparametrizationInvariance)
{
    const SurfaceHandle cone = wide_cone();
    const AffineMap2 map{{0.8, 0.2, -0.1, 1.1}, {-0.3, 0.4}};
    const SurfaceHandle r = reparametrize_affine(cone, map, {-1.6, -0.9, 0.5, 2.0});
    for (double p : {-1.5, -1.2, -1.0})
        for (double q : {0.6, 1.2, 1.9}) {
            const auto [u, v] = map.apply(p, q);
            ASSERT_TRUE(cone.domain().contains(u, v));
            EXPECT_NEAR(mean_curvature_local(r, p, q).H, mean_curvature_local(cone, u, v).H, 1e-10);
            const HorizontalVec a = unit_horizontal_normal(r.eval_jet2(p, q));
            const HorizontalVec b = unit_horizontal_normal(cone.eval_jet2(u, v));
            EXPECT_NEAR(a.h1, b.h1, 1e-10);
            EXPECT_NEAR(a.h2, b.h2, 1e-10);
        }
}

TEST(SignedCurvature, Examples)
{
    for (double R : {0.5, 3.0}) {
        const double s = 0.7;
        EXPECT_NEAR(signed_curvature_plane({-R * std::sin(s), R * std::cos(s)}, {-R * std::cos(s), -R * std::sin(s)}),
                    1.0 / R, 1e-14);
    }
    EXPECT_EQ(signed_curvature_plane({2.0, -1.0}, {0.0, 0.0}), 0.0);
    EXPECT_EQ(signed_curvature_plane({1.0, 0.0}, {0.0, 2.0}), 2.0);
    EXPECT_EQ(signed_curvature_plane({1.0, 0.0}, {0.0, -2.0}), -2.0);
    EXPECT_THROW(signed_curvature_plane({0.0, 0.0}, {1.0, 0.0}), Error);
}

TEST(FlowOracle, Cylinder)
{
    for (double R : {1.0, 2.0}) {
        CatalogParams p;
        p.radius = R;
        const CurvatureSample h = mean_curvature_flow_oracle(catalog_get("cylinder", p), 2.0, 0.0, 1e-3);
        EXPECT_EQ(h.method, CurvatureMethod::FlowOracle);
        EXPECT_NEAR(h.H, 1.0 / R, 1e-4);
    }
}

TEST(FlowOracle, RuledAndCone)
{
    EXPECT_NEAR(mean_curvature_flow_oracle(catalog_get("paraboloid"), 0.5, 0.3, 1e-3).H, 0.0, 1e-6);
    EXPECT_NEAR(mean_curvature_flow_oracle(wide_cone(), -1.0, 0.0, 1e-3).H, -std::pow(5.0, -1.5), 1e-4);
}

TEST(FlowOracle, LeafLeavesDomain)
{
    // The leaf through a point on the edge u = -0.5 exits at once on one side.
    try {
        mean_curvature_flow_oracle(catalog_get("cone_lower"), -0.5, 1.0, 1e-3);
        FAIL() << "expected FlowEscapedDomain";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FlowEscapedDomain);
    }
}

TEST(HMinimal, CatalogAndRuled)
{
    const HMinimalReport par = is_h_minimal(catalog_get("paraboloid"), {101, 101}, 1e-8);
    EXPECT_TRUE(par.pass);
    EXPECT_GT(par.evaluated, 9000);

    Rng rng(59);
    for (int i = 0; i < 5; ++i) {
        const HMinimalReport r = is_h_minimal(build_straight_ruled(random_buildable_ruled_spec(rng)), {41, 41}, 1e-8);
        EXPECT_TRUE(r.pass) << r.max_abs_h;
    }

    EXPECT_TRUE(is_h_minimal(catalog_get("plane_flow_patch"), {41, 41}, 1e-8).pass);
    EXPECT_TRUE(is_h_minimal(catalog_get("circle_lift_developable"), {41, 41}, 1e-8).pass);
    EXPECT_TRUE(is_h_minimal(catalog_get("vertical_plane_x0"), {41, 41}, 1e-8).pass);
}

TEST(HMinimal, ConeFails)
{
    const HMinimalReport r = is_h_minimal(catalog_get("cone_lower"), {41, 41}, 1e-8);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_abs_h, 0.01);
    EXPECT_EQ(r.skipped_characteristic, 0);
}

TEST(HMinimal, SkipsCharacteristicAndReportsEmpty)
{
    const HMinimalReport t0 = is_h_minimal(catalog_get("plane_t0"), {21, 21}, 1e-8);
    EXPECT_EQ(t0.skipped_characteristic, 1);
    EXPECT_EQ(t0.evaluated, 440);

    const HMinimalReport none = is_h_minimal(catalog_get("paraboloid"), {5, 5}, 1e-8, {}, 1e6);
    EXPECT_TRUE(none.empty());
    EXPECT_FALSE(none.pass);
}

TEST(GridCoordinate, Endpoints)
{
    EXPECT_EQ(grid_coordinate(-2.0, -0.5, 0, 101), -2.0);
    EXPECT_EQ(grid_coordinate(-2.0, -0.5, 100, 101), -0.5);
    EXPECT_EQ(grid_coordinate(0.0, 1.0, 0, 1), 0.5);
}
