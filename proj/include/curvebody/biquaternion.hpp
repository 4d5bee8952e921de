#pragma once

#include <cmath>

#include "curvebody/ring.hpp"

namespace curvebody {

// Quaternion with ring-scalar coefficients: X = s + v, eight real components total.
struct Biquaternion {
    RingScalar s;
    RingVector3 v;

    Space space() const { return s.space; }

    static Biquaternion identity(Space sp) {
        return {RingScalar::one(sp), RingVector3::zero(sp)};
    }
    static Biquaternion zero(Space sp) {
        return {RingScalar::zero(sp), RingVector3::zero(sp)};
    }
    static Biquaternion scalar(RingScalar a) { return {a, RingVector3::zero(a.space)}; }
    static Biquaternion vector(const RingVector3& w) { return {RingScalar::zero(w.space), w}; }

    friend Biquaternion operator+(const Biquaternion& a, const Biquaternion& b) {
        return {a.s + b.s, a.v + b.v};
    }
    friend Biquaternion operator-(const Biquaternion& a, const Biquaternion& b) {
        return {a.s - b.s, a.v - b.v};
    }
    Biquaternion operator-() const { return {-s, -v}; }
    friend Biquaternion operator*(double c, const Biquaternion& a) { return {c * a.s, c * a.v}; }
    friend Biquaternion operator*(const Biquaternion& a, double c) { return c * a; }
    friend Biquaternion operator*(RingScalar c, const Biquaternion& a) {
        return {c * a.s, c * a.v};
    }

    // Quaternion product over the ring: scalar part s_P s_Q - (v_P . v_Q),
    // vector part s_P v_Q + s_Q v_P + [v_P x v_Q].
    friend Biquaternion operator*(const Biquaternion& p, const Biquaternion& q) {
        require_same_space(p.space(), q.space(), "biquaternion mul");
        return {p.s * q.s - dot(p.v, q.v), p.s * q.v + q.s * p.v + cross(p.v, q.v)};
    }
};

// Quaternion conjugation: flips the vector part only.
inline Biquaternion bar(const Biquaternion& x) { return {x.s, -x.v}; }

// Ring conjugation u -> -u applied to all eight components.
inline Biquaternion star(const Biquaternion& x) {
    return {conj_u(x.s), {x.v.re, -x.v.im, x.v.space}};
}

// X * bar(X); always lands in the ring.
inline RingScalar norm(const Biquaternion& x) { return x.s * x.s + dot(x.v, x.v); }

// Euclidean magnitude of all eight components; residual metric, not multiplicative.
inline double component_norm(const Biquaternion& x) {
    return std::sqrt(norm2(x.v.re) + norm2(x.v.im) + x.s.re * x.s.re + x.s.im * x.s.im);
}

// Members of the real subspace {s = X0*u, v real}: the embedded model-space points.
// These close under the real-linear structure but not under multiplication.
inline bool minkowski_type(const Biquaternion& x, double tol = 1e-12) {
    return std::abs(x.s.re) <= tol && norm(x.v.im) <= tol;
}

// Scale to unit norm: X / sqrt(+norm) for the sphere, X / sqrt(-norm) for hyperbolic,
// where the norm must be numerically real. Hyperbolic inputs must sit on the upper
// sheet (u-component of the scalar part positive).
inline Biquaternion normalized(const Biquaternion& x) {
    const RingScalar n = norm(x);
    const double scale = std::max(1.0, std::abs(n.re));
    if (std::abs(n.im) > 1e-12 * scale)
        throw SqrtDomain("normalize: norm has a u-component, no real square root");
    if (x.space() == Space::Sphere) {
        if (n.re <= 1e-14) throw ZeroDivisor("normalize: null norm over the double numbers");
        return (1.0 / std::sqrt(n.re)) * x;
    }
    if (std::abs(n.re) <= 1e-12) throw NullNorm("normalize: lightlike element");
    if (n.re > 0.0)
        throw SqrtDomain("normalize: spacelike element cannot be scaled to norm -1");
    if (x.s.im <= 0.0) throw WrongSheet("normalize: lower-sheet element (X0 <= 0)");
    return (1.0 / std::sqrt(-n.re)) * x;
}

}  // namespace curvebody
