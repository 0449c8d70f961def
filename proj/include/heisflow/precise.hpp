#pragma once

#include <boost/multiprecision/float128.hpp>

namespace heisflow {

/// IEEE binary128. Analytic surfaces also evaluate their 2-jets in this type
/// so that curvature near the characteristic locus, where N^h is a small
/// difference of large terms, keeps its accuracy.
using Quad = boost::multiprecision::float128;

template <typename T>
struct Vec3T {
    T x{};
    T y{};
    T z{};

    friend Vec3T operator+(const Vec3T& a, const Vec3T& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3T operator*(const T& s, const Vec3T& a) { return {s * a.x, s * a.y, s * a.z}; }
};

/// Same layout as Jet2 with `value` stored as (x, y, t) in a Vec3T.
template <typename T>
struct Jet2T {
    Vec3T<T> value;
    Vec3T<T> du;
    Vec3T<T> dv;
    Vec3T<T> duu;
    Vec3T<T> duv;
    Vec3T<T> dvv;
};

using JetQ = Jet2T<Quad>;

} // namespace heisflow
