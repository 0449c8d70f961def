#pragma once

#include <cmath>

namespace heisflow {

/// A point (x, y, t) of the Heisenberg group in global coordinates.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

/// Plain Euclidean triple; used for tangent vectors written in the
/// coordinate basis {d/dx, d/dy, d/dt}.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Tangent vector a1 X + a2 Y + a3 T at `base`, in the left-invariant frame
/// X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt, T = d/dt.
struct FrameVector {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    Point3 base;
};

/// Horizontal vector h1 X + h2 Y at `base`. {X, Y} is orthonormal for the
/// sub-Riemannian inner product.
struct HorizontalVec {
    double h1 = 0.0;
    double h2 = 0.0;
    Point3 base;
};

// Group structure.
Point3 group_mul(const Point3& p, const Point3& q);
Point3 group_inv(const Point3& p);

double koranyi_gauge(const Point3& p);
double kc_distance(const Point3& p, const Point3& q);

// Frame and contact form.
FrameVector frame_x(const Point3& base);
FrameVector frame_y(const Point3& base);
FrameVector frame_t(const Point3& base);

Vec3 frame_to_euclidean(const FrameVector& v);
FrameVector euclidean_to_frame(const Point3& base, const Vec3& w);

/// omega = dt + 2(x dy - y dx) applied to a Euclidean tangent vector at p.
double contact_eval(const Point3& p, const Vec3& w);

/// Formal determinant in the {X, Y, T} frame. Throws MismatchedBase when
/// the operands live at different points.
FrameVector h_wedge(const FrameVector& a, const FrameVector& b);

// Horizontal inner product and complex structure.
double h_inner(const HorizontalVec& a, const HorizontalVec& b);
double h_norm(const HorizontalVec& v);
HorizontalVec j_rotate(const HorizontalVec& v);

} // namespace heisflow
