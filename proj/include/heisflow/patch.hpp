#pragma once

#include "heisflow/heisenberg.hpp"
#include "heisflow/precise.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>

namespace heisflow {

/// Value, first and second parameter derivatives of a patch
/// sigma(u, v) = (x, y, t). Mixed partials are symmetric (one d_uv slot).
struct Jet2 {
    Point3 value;
    Vec3 du;
    Vec3 dv;
    Vec3 duu;
    Vec3 duv;
    Vec3 dvv;
};

struct Domain {
    double u_min = 0.0;
    double u_max = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;

    bool contains(double u, double v) const
    {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
    double u_span() const { return u_max - u_min; }
    double v_span() const { return v_max - v_min; }
};

using JetFunction = std::function<Jet2(double u, double v)>;
using ValueMap = std::function<Point3(double u, double v)>;
using PreciseJetFunction = std::function<JetQ(double u, double v)>;

/// Smallest |sigma_u x sigma_v| accepted as a regular point.
inline constexpr double kEpsRegular = 1e-8;

/// Immutable 2-jet evaluator over a closed rectangular parameter domain.
/// Copies share the evaluator; evaluation is read-only and may be called
/// concurrently.
class SurfaceHandle {
public:
    SurfaceHandle(std::string name, Domain domain, JetFunction jet, PreciseJetFunction precise = {});

    const std::string& name() const { return name_; }
    SurfaceHandle renamed(std::string name) const
    {
        SurfaceHandle r = *this;
        r.name_ = std::move(name);
        return r;
    }
    const Domain& domain() const { return domain_; }
    int orientation() const { return 1; }

    /// Throws OutOfDomain outside the closed domain.
    Jet2 eval_jet2(double u, double v) const;
    Point3 eval(double u, double v) const { return eval_jet2(u, v).value; }

    /// Analytic surfaces also carry a binary128 evaluator of the same jet.
    bool has_precise_jet() const { return static_cast<bool>(precise_); }
    /// Throws OutOfDomain, or InvalidSpec when there is no precise evaluator.
    JetQ eval_jet2_precise(double u, double v) const;

private:
    std::string name_;
    Domain domain_;
    JetFunction jet_;
    PreciseJetFunction precise_;
};

/// |sigma_u x sigma_v| (Euclidean).
double regularity(const Jet2& j);

/// Samples an n x n grid strictly inside the domain and throws NotRegular
/// at the first point with |sigma_u x sigma_v| <= eps.
void check_regular(const SurfaceHandle& s, int n = 101, double eps = kEpsRegular);

/// Default central-difference step for (u, v).
double fd_default_step(double u, double v);

/// Central-difference 2-jet of a value-only map. When `domain` is given the
/// stencil is shrunk to fit; a stencil that cannot fit (point on or outside
/// the boundary) raises OutOfDomain.
Jet2 fd_jet2(const ValueMap& map, double u, double v, double h);
Jet2 fd_jet2(const ValueMap& map, double u, double v, double h, const Domain& domain);

/// Wraps a value-only map as a SurfaceHandle using fd_jet2 with the default step.
SurfaceHandle make_fd_surface(std::string name, Domain domain, ValueMap map);

/// The three parameter Jacobians d(y,t)/d(u,v), d(t,x)/d(u,v), d(x,y)/d(u,v).
struct Jacobians {
    double yt = 0.0;
    double tx = 0.0;
    double xy = 0.0;
};

Jacobians jacobians(const Jet2& j);

/// (u, v) = A (p, q) + b, A row-major 2x2.
struct AffineMap2 {
    std::array<double, 4> a{1.0, 0.0, 0.0, 1.0};
    std::array<double, 2> b{0.0, 0.0};

    double det() const { return a[0] * a[3] - a[1] * a[2]; }
    std::array<double, 2> apply(double p, double q) const
    {
        return {a[0] * p + a[1] * q + b[0], a[2] * p + a[3] * q + b[1]};
    }
};

/// sigma~(p, q) = sigma(A(p, q) + b) with jets propagated by the chain rule.
/// `domain` is the (p, q) rectangle; it must map into the source domain.
SurfaceHandle reparametrize_affine(const SurfaceHandle& s, const AffineMap2& map, Domain domain);

} // namespace heisflow
