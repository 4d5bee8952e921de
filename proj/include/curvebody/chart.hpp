#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "curvebody/biquaternion.hpp"

namespace curvebody {

// Projective (gnomonic / Beltrami-Klein) chart around the base point. Geodesics through
// the model space map to straight lines in v. For the sphere the chart covers the open
// hemisphere around the base point; for hyperbolic space it is the open unit ball.
struct ChartPoint {
    Vec3 v{};
    Space space = Space::Sphere;

    double lambda() const { return 1.0 + sigma(space) * norm2(v); }
};

inline void validate_chart_point(const ChartPoint& p) {
    if (!std::isfinite(p.v.x) || !std::isfinite(p.v.y) || !std::isfinite(p.v.z))
        throw ChartDomain("chart point has non-finite components");
    if (p.lambda() <= 0.0)
        throw ChartDomain("chart point outside the unit ball");
}

// X = (u + sigma*v) / sqrt(lambda), a unit Minkowski-type element with X*bar(X) = sigma
// and positive u-component X0 = 1/sqrt(lambda).
inline Biquaternion point_to_embedding(const ChartPoint& p) {
    validate_chart_point(p);
    const double inv = 1.0 / std::sqrt(p.lambda());
    return {RingScalar::imaginary(inv, p.space),
            RingVector3::real((sigma(p.space) * inv) * p.v, p.space)};
}

// Inverse of point_to_embedding on unit Minkowski-type elements: v = sigma * x / X0.
// On the sphere X and -X represent the same point.
inline ChartPoint embedding_to_point(const Biquaternion& x) {
    if (!minkowski_type(x, 1e-8))
        throw ChartDomain("embedding_to_point: not a Minkowski-type element");
    const double x0 = x.s.im;
    if (x.space() == Space::Sphere) {
        if (std::abs(x0) < 1e-300)
            throw EquatorSingularity("embedding_to_point: X0 = 0 lies on the equator");
        return {(sigma(x.space()) / x0) * x.v.re, x.space()};
    }
    if (x0 <= 0.0) throw WrongSheet("embedding_to_point: X0 <= 0");
    return {(sigma(x.space()) / x0) * x.v.re, x.space()};
}

// d/dt of point_to_embedding along chart velocity vdot; tangent at X.
inline Biquaternion point_velocity(const ChartPoint& p, Vec3 vdot) {
    validate_chart_point(p);
    const double sg = sigma(p.space);
    const double lam = p.lambda();
    const double inv = 1.0 / std::sqrt(lam);
    const double proj = sg * dot(p.v, vdot) / (lam * std::sqrt(lam));
    // (sigma*vdot)/sqrt(lambda) - (u + sigma*v) * sigma*(v.vdot)/lambda^{3/2}
    return {RingScalar::imaginary(-proj, p.space),
            RingVector3::real(sg * inv * vdot - proj * (sg * p.v), p.space)};
}

// Recover (v, vdot) from a Minkowski-type embedding X and tangent Xdot.
inline std::pair<ChartPoint, Vec3> embedding_rates_to_chart(const Biquaternion& x,
                                                            const Biquaternion& xdot) {
    const ChartPoint p = embedding_to_point(x);
    const double sg = sigma(x.space());
    const double x0 = x.s.im;
    const Vec3 xv = x.v.re;
    const Vec3 dv = xdot.v.re;
    const double d0 = xdot.s.im;
    return {p, (sg / (x0 * x0)) * (x0 * dv - d0 * xv)};
}

// Ring-valued 3-vectors encode ordered point pairs (directed geodesic segments).
using PairVector = RingVector3;

// The chart point v as a pair vector anchored at the base point: q = u*v.
inline PairVector pure_vector(Vec3 v, Space sp) { return RingVector3::imaginary(v, sp); }

// Composition of directed segments:
//   <a, b> = (a + b + [a x b]) * (1 - (a.b))^{-1}, all ring arithmetic.
// Matches the chart of the quaternion product lift(a)*lift(b), lift(q) = 1 + q.
inline PairVector vector_add(const PairVector& a, const PairVector& b) {
    require_same_space(a.space, b.space, "vector_add");
    const RingScalar den = RingScalar::one(a.space) - dot(a, b);
    RingScalar den_inv;
    try {
        den_inv = invert(den);
    } catch (const Error&) {
        throw NonInvertibleDenominator("vector_add: 1 - (a.b) not invertible; "
                                       "composition reaches chart infinity");
    }
    return (a + b + cross(a, b)) * den_inv;
}

// Chart vector of a transform with invertible scalar part: q = vector * scalar^{-1}.
inline PairVector transform_chart_vector(const Biquaternion& q) {
    RingScalar s_inv;
    try {
        s_inv = invert(q.s);
    } catch (const Error&) {
        throw ChartInfinity("transform_chart_vector: scalar part not invertible");
    }
    return q.v * s_inv;
}

// Unit transform Q carrying p1 to p2 by left multiplication: Q = +X2*bar(X1) on the
// sphere, Q = -X2*bar(X1) in hyperbolic space, so that Q*X1 = X2 and Q*bar(Q) = 1.
// Its scalar part is real: (1 + sigma*(v1.v2)) / sqrt(lambda1*lambda2).
inline Biquaternion pair_transform(const ChartPoint& p1, const ChartPoint& p2) {
    require_same_space(p1.space, p2.space, "pair_transform");
    const Biquaternion x1 = point_to_embedding(p1);
    const Biquaternion x2 = point_to_embedding(p2);
    const Biquaternion q = x2 * bar(x1);
    return p1.space == Space::Sphere ? q : -q;
}

// Geodesic distance: r = arccos(c) on the sphere, arccosh(c) in hyperbolic space,
// c = (1 + sigma*(v1.v2)) / sqrt(lambda1*lambda2). Values of c beyond the admissible
// interval by more than 1e-12 are a NumericalDomain error; closer ones are clamped.
inline double geodesic_distance(const ChartPoint& p1, const ChartPoint& p2) {
    require_same_space(p1.space, p2.space, "geodesic_distance");
    validate_chart_point(p1);
    validate_chart_point(p2);
    const double sg = sigma(p1.space);
    double c = (1.0 + sg * dot(p1.v, p2.v)) / std::sqrt(p1.lambda() * p2.lambda());
    if (p1.space == Space::Sphere) {
        if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
            throw NumericalDomain("geodesic_distance: cosine out of [-1, 1]");
        c = std::min(1.0, std::max(-1.0, c));
        return std::acos(c);
    }
    if (c < 1.0 - 1e-12)
        throw NumericalDomain("geodesic_distance: hyperbolic cosine below 1");
    c = std::max(1.0, c);
    return std::acosh(c);
}

// Symmetric 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> a{};
    double operator()(int i, int j) const { return a[3 * i + j]; }
    double& operator()(int i, int j) { return a[3 * i + j]; }
    Vec3 apply(Vec3 w) const {
        return {a[0] * w.x + a[1] * w.y + a[2] * w.z,
                a[3] * w.x + a[4] * w.y + a[5] * w.z,
                a[6] * w.x + a[7] * w.y + a[8] * w.z};
    }
};

inline double quadratic_form(const Mat3& g, Vec3 a, Vec3 b) { return dot(a, g.apply(b)); }

// Pullback of the ambient quadratic form through point_to_embedding:
//   g_ab = (lambda*delta_ab - sigma*v_a*v_b) / lambda^2.
inline Mat3 metric_tensor(const ChartPoint& p) {
    validate_chart_point(p);
    const double sg = sigma(p.space);
    const double lam = p.lambda();
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g(i, j) = ((i == j ? lam : 0.0) - sg * p.v[i] * p.v[j]) / (lam * lam);
    return g;
}

// Closed-form inverse: g^{ab} = lambda * (delta_ab + sigma*v_a*v_b).
inline Mat3 metric_inverse(const ChartPoint& p) {
    validate_chart_point(p);
    const double sg = sigma(p.space);
    const double lam = p.lambda();
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g(i, j) = lam * ((i == j ? 1.0 : 0.0) + sg * p.v[i] * p.v[j]);
    return g;
}

}  // namespace curvebody
