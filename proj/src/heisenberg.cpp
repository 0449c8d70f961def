#include "heisflow/heisenberg.hpp"

#include "heisflow/error.hpp"

#include <cmath>

namespace heisflow {

Point3 group_mul(const Point3& p, const Point3& q)
{
    return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * (p.y * q.x - p.x * q.y)};
}

Point3 group_inv(const Point3& p) { return {-p.x, -p.y, -p.t}; }

double koranyi_gauge(const Point3& p)
{
    // | |x+iy|^2 - i t |^(1/2)
    const double r2 = p.x * p.x + p.y * p.y;
    return std::sqrt(std::hypot(r2, p.t));
}

double kc_distance(const Point3& p, const Point3& q)
{
    return koranyi_gauge(group_mul(group_inv(p), q));
}

FrameVector frame_x(const Point3& base) { return {1.0, 0.0, 0.0, base}; }
FrameVector frame_y(const Point3& base) { return {0.0, 1.0, 0.0, base}; }
FrameVector frame_t(const Point3& base) { return {0.0, 0.0, 1.0, base}; }

Vec3 frame_to_euclidean(const FrameVector& v)
{
    const Point3& p = v.base;
    return {v.a1, v.a2, v.a3 + 2.0 * p.y * v.a1 - 2.0 * p.x * v.a2};
}

FrameVector euclidean_to_frame(const Point3& base, const Vec3& w)
{
    // The T coefficient is exactly omega(w).
    return {w.x, w.y, contact_eval(base, w), base};
}

double contact_eval(const Point3& p, const Vec3& w)
{
    return w.z + 2.0 * p.x * w.y - 2.0 * p.y * w.x;
}

FrameVector h_wedge(const FrameVector& a, const FrameVector& b)
{
    if (!(a.base == b.base))
        throw Error(ErrorCode::MismatchedBase, "Heisenberg wedge of vectors at different points");
    return {
        a.a2 * b.a3 - a.a3 * b.a2,
        a.a3 * b.a1 - a.a1 * b.a3,
        a.a1 * b.a2 - a.a2 * b.a1,
        a.base,
    };
}

double h_inner(const HorizontalVec& a, const HorizontalVec& b)
{
    if (!(a.base == b.base))
        throw Error(ErrorCode::MismatchedBase, "inner product of vectors at different points");
    return a.h1 * b.h1 + a.h2 * b.h2;
}

double h_norm(const HorizontalVec& v) { return std::hypot(v.h1, v.h2); }

HorizontalVec j_rotate(const HorizontalVec& v) { return {-v.h2, v.h1, v.base}; }

} // namespace heisflow
