#include "heisflow/patch.hpp"

#include "heisflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace heisflow {

namespace {

Vec3 to_vec(const Point3& p) { return {p.x, p.y, p.t}; }

std::string where(double u, double v)
{
    std::ostringstream os;
    os.precision(17);
    os << "(u, v) = (" << u << ", " << v << ")";
    return os.str();
}

} // namespace

SurfaceHandle::SurfaceHandle(std::string name, Domain domain, JetFunction jet, PreciseJetFunction precise)
    : name_(std::move(name)), domain_(domain), jet_(std::move(jet)), precise_(std::move(precise))
{
    if (!(domain_.u_min < domain_.u_max) || !(domain_.v_min < domain_.v_max))
        throw Error(ErrorCode::InvalidSpec, "empty parameter domain for " + name_);
}

Jet2 SurfaceHandle::eval_jet2(double u, double v) const
{
    if (!domain_.contains(u, v))
        throw Error(ErrorCode::OutOfDomain, name_ + " at " + where(u, v));
    return jet_(u, v);
}

JetQ SurfaceHandle::eval_jet2_precise(double u, double v) const
{
    if (!precise_)
        throw Error(ErrorCode::InvalidSpec, name_ + " has no precise evaluator");
    if (!domain_.contains(u, v))
        throw Error(ErrorCode::OutOfDomain, name_ + " at " + where(u, v));
    return precise_(u, v);
}

double regularity(const Jet2& j) { return norm(cross(j.du, j.dv)); }

void check_regular(const SurfaceHandle& s, int n, double eps)
{
    const Domain& d = s.domain();
    for (int i = 1; i <= n; ++i) {
        const double u = d.u_min + d.u_span() * i / (n + 1);
        for (int k = 1; k <= n; ++k) {
            const double v = d.v_min + d.v_span() * k / (n + 1);
            if (!(regularity(s.eval_jet2(u, v)) > eps))
                throw Error(ErrorCode::NotRegular, s.name() + " at " + where(u, v));
        }
    }
}

double fd_default_step(double u, double v)
{
    const double scale = std::max({1.0, std::abs(u), std::abs(v)});
    return std::max(1e-4, std::cbrt(std::numeric_limits<double>::epsilon()) * scale);
}

Jet2 fd_jet2(const ValueMap& map, double u, double v, double h)
{
    if (!(h > 0.0))
        throw Error(ErrorCode::InvalidSpec, "finite-difference step must be positive");
    const Vec3 c = to_vec(map(u, v));
    const Vec3 up = to_vec(map(u + h, v));
    const Vec3 um = to_vec(map(u - h, v));
    const Vec3 vp = to_vec(map(u, v + h));
    const Vec3 vm = to_vec(map(u, v - h));
    const Vec3 pp = to_vec(map(u + h, v + h));
    const Vec3 pm = to_vec(map(u + h, v - h));
    const Vec3 mp = to_vec(map(u - h, v + h));
    const Vec3 mm = to_vec(map(u - h, v - h));

    Jet2 j;
    j.value = {c.x, c.y, c.z};
    j.du = (up - um) * (1.0 / (2.0 * h));
    j.dv = (vp - vm) * (1.0 / (2.0 * h));
    j.duu = (up - 2.0 * c + um) * (1.0 / (h * h));
    j.dvv = (vp - 2.0 * c + vm) * (1.0 / (h * h));
    j.duv = (pp - pm - mp + mm) * (1.0 / (4.0 * h * h));
    return j;
}

Jet2 fd_jet2(const ValueMap& map, double u, double v, double h, const Domain& domain)
{
    if (!domain.contains(u, v))
        throw Error(ErrorCode::OutOfDomain, "finite-difference centre " + where(u, v));
    const double room = std::min({u - domain.u_min, domain.u_max - u, v - domain.v_min, domain.v_max - v});
    const double clipped = std::min(h, room);
    // Below this the second differences are pure roundoff.
    if (!(clipped >= 1e-3 * h))
        throw Error(ErrorCode::OutOfDomain, "finite-difference stencil does not fit at " + where(u, v));
    return fd_jet2(map, u, v, clipped);
}

SurfaceHandle make_fd_surface(std::string name, Domain domain, ValueMap map)
{
    return SurfaceHandle(std::move(name), domain, [map = std::move(map), domain](double u, double v) {
        return fd_jet2(map, u, v, fd_default_step(u, v), domain);
    });
}

Jacobians jacobians(const Jet2& j)
{
    const Vec3& a = j.du;
    const Vec3& b = j.dv;
    return {
        a.y * b.z - b.y * a.z,
        a.z * b.x - b.z * a.x,
        a.x * b.y - b.x * a.y,
    };
}

namespace {

// Chain rule for (u, v) = A (p, q) + b; u_p = A0, u_q = A1, v_p = A2, v_q = A3.
template <typename J, typename T>
J affine_chain(const J& j, const std::array<double, 4>& A)
{
    const T a0 = A[0], a1 = A[1], a2 = A[2], a3 = A[3];
    const T two = 2;
    J r;
    r.value = j.value;
    r.du = a0 * j.du + a2 * j.dv;
    r.dv = a1 * j.du + a3 * j.dv;
    r.duu = (a0 * a0) * j.duu + (two * a0 * a2) * j.duv + (a2 * a2) * j.dvv;
    r.duv = (a0 * a1) * j.duu + (a0 * a3 + a1 * a2) * j.duv + (a2 * a3) * j.dvv;
    r.dvv = (a1 * a1) * j.duu + (two * a1 * a3) * j.duv + (a3 * a3) * j.dvv;
    return r;
}

} // namespace

SurfaceHandle reparametrize_affine(const SurfaceHandle& s, const AffineMap2& map, Domain domain)
{
    PreciseJetFunction precise;
    if (s.has_precise_jet())
        precise = [s, map](double p, double q) {
            const auto [u, v] = map.apply(p, q);
            return affine_chain<JetQ, Quad>(s.eval_jet2_precise(u, v), map.a);
        };
    return SurfaceHandle(
        s.name() + "~affine", domain,
        [s, map](double p, double q) {
            const auto [u, v] = map.apply(p, q);
            return affine_chain<Jet2, double>(s.eval_jet2(u, v), map.a);
        },
        std::move(precise));
}

} // namespace heisflow
