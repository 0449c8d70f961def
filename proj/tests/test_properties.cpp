// Randomised invariants. Every test draws from a fixed seed so failures replay.
#include "heisflow/builders.hpp"
#include "heisflow/curvature.hpp"
#include "heisflow/flow.hpp"
#include "heisflow/heisenberg.hpp"
#include "heisflow/horizontal.hpp"
#include "heisflow/rng.hpp"
#include "heisflow/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace heisflow;

namespace {

Point3 random_point(Rng& rng) { return {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}; }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

} // namespace

TEST(Rng, LinearCongruentialContract)
{
    Rng rng(0);
    EXPECT_EQ(rng.next_u64(), 1442695040888963407ULL);
    EXPECT_EQ(rng.next_u64(), 6364136223846793005ULL * 1442695040888963407ULL + 1442695040888963407ULL);
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const int k = c.integer(-2, 3);
        EXPECT_GE(k, -2);
        EXPECT_LE(k, 3);
    }
}

TEST(Property, GroupAssociativity)
{
    Rng rng(101);
    for (int i = 0; i < 10000; ++i) {
        const Point3 p = random_point(rng), q = random_point(rng), r = random_point(rng);
        const Point3 a = group_mul(group_mul(p, q), r), b = group_mul(p, group_mul(q, r));
        EXPECT_LE(rel(a.x, b.x), 1e-12);
        EXPECT_LE(rel(a.y, b.y), 1e-12);
        EXPECT_LE(rel(a.t, b.t), 1e-12);
    }
}

TEST(Property, LeftTranslationPreservesHorizontality)
{
    // A horizontal curve stays horizontal after left translation.
    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        const Point3 g = random_point(rng);
        std::vector<Point3> pts;
        for (int k = 0; k <= 400; ++k) {
            const double s = 0.005 * k;
            pts.push_back(group_mul(g, Point3{std::cos(s), std::sin(s), -2.0 * s}));
        }
        EXPECT_LE(horizontality_residual(pts, 0.005), 1e-8);
    }
}

TEST(Property, RandomRuledSurfacesAreHMinimal)
{
    Rng rng(107);
    for (int i = 0; i < 20; ++i) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const HMinimalReport r = is_h_minimal(build_straight_ruled(spec), {21, 21}, 1e-8);
        EXPECT_TRUE(r.pass) << "spec " << i << " max |H| " << r.max_abs_h;
    }
}

TEST(Property, RuledLeavesProjectToLines)
{
    Rng rng(109);
    for (int i = 0; i < 10; ++i) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const SurfaceHandle s = build_straight_ruled(spec);
        const double u = rng.uniform(-0.8, 0.8), v = rng.uniform(-0.4, 0.4);
        if (horizontal_normal(s.eval_jet2(u, v)).norm < 1e-2)
            continue;
        const FlowTrace t = integrate_flow(s, u, v, 1e-2, 200);
        for (double d : projected_second_derivative(t))
            EXPECT_LE(d, 1e-4);
        for (const auto& p : t.params)
            EXPECT_NEAR(p[0], u, 1e-10);
    }
}

TEST(Property, LambdaPullbackOnRandomSpecs)
{
    Rng rng(113);
    for (int i = 0; i < 20; ++i) {
        const RuledSpec spec = random_buildable_ruled_spec(rng);
        const SurfaceHandle s = build_straight_ruled(spec);
        for (int k = 0; k < 20; ++k) {
            const double u = rng.uniform(-1, 1), v = rng.uniform(-0.5, 0.5);
            if (std::abs(eval_eta(spec, u, v)) < 1e-3)
                continue;
            const double lambda = lambda_to_plane(spec, u, v);
            EXPECT_LE(contact_residual(s.eval_jet2(u, v), plane_flow_jet(spec.angle, u, v), lambda), 1e-10);
        }
    }
}

TEST(Property, OracleAgreesWithLocalFormula)
{
    Rng rng(127);
    for (const char* name : {"cone_lower", "cylinder", "circle_lift_developable", "paraboloid"}) {
        SCOPED_TRACE(name);
        const SurfaceHandle s = catalog_get(name);
        const Domain& d = s.domain();
        int compared = 0;
        for (int i = 0; i < 40; ++i) {
            const double u = rng.uniform(d.u_min + 0.05 * d.u_span(), d.u_max - 0.05 * d.u_span());
            const double v = rng.uniform(d.v_min + 0.05 * d.v_span(), d.v_max - 0.05 * d.v_span());
            if (horizontal_normal(s.eval_jet2(u, v)).norm < 1e-2)
                continue;
            const double local = mean_curvature_local(s, u, v).H;
            const double oracle = mean_curvature_flow_oracle(s, u, v).H;
            EXPECT_NEAR(local, oracle, 1e-3);
            ++compared;
        }
        EXPECT_GT(compared, 20);
    }
}

TEST(Property, NormalIsReparametrizationInvariant)
{
    Rng rng(131);
    const SurfaceHandle s = build_straight_ruled(random_buildable_ruled_spec(rng));
    for (int i = 0; i < 200; ++i) {
        const AffineMap2 map{{rng.uniform(0.6, 1.4), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(0.6, 1.4)},
                             {0, 0}};
        const double u = rng.uniform(-0.9, 0.9), v = rng.uniform(-0.45, 0.45);
        if (horizontal_normal(s.eval_jet2(u, v)).norm < 1e-3)
            continue;
        const double det = map.det();
        const double p = (map.a[3] * u - map.a[1] * v) / det, q = (-map.a[2] * u + map.a[0] * v) / det;
        const SurfaceHandle r = reparametrize_affine(s, map, {p - 1e-3, p + 1e-3, q - 1e-3, q + 1e-3});
        const auto [u2, v2] = map.apply(p, q);
        const HorizontalVec a = unit_horizontal_normal(r.eval_jet2(p, q));
        const HorizontalVec b = unit_horizontal_normal(s.eval_jet2(u2, v2));
        EXPECT_NEAR(a.h1, b.h1, 1e-10);
        EXPECT_NEAR(a.h2, b.h2, 1e-10);
        EXPECT_NEAR(mean_curvature_local(r, p, q).H, mean_curvature_local(s, u2, v2).H, 1e-8);
    }
}
