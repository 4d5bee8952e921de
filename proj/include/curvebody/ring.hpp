#pragma once

#include <cmath>
#include <string>

#include "curvebody/errors.hpp"
#include "curvebody/vec3.hpp"

namespace curvebody {

// Which commutative coefficient ring the algebra runs over: u^2 = sigma.
//   Sphere:     sigma = +1, double (split-complex) numbers -> geometry of S^3.
//   Hyperbolic: sigma = -1, complex numbers               -> Lobachevsky space H^3.
enum class Space : int { Sphere = +1, Hyperbolic = -1 };

inline constexpr double sigma(Space s) { return s == Space::Sphere ? 1.0 : -1.0; }

inline const char* space_name(Space s) { return s == Space::Sphere ? "sphere" : "hyperbolic"; }

inline void require_same_space(Space a, Space b, const char* op) {
    if (a != b)
        throw SignMismatch(std::string(op) + ": operands live over different rings (" +
                           space_name(a) + " vs " + space_name(b) + ")");
}

// Element re + im*u of R[u]/(u^2 - sigma). Every value carries its Space; mixing is an error.
struct RingScalar {
    double re = 0.0;
    double im = 0.0;
    Space space = Space::Sphere;

    static RingScalar real(double r, Space s) { return {r, 0.0, s}; }
    static RingScalar imaginary(double i, Space s) { return {0.0, i, s}; }
    static RingScalar one(Space s) { return {1.0, 0.0, s}; }
    static RingScalar zero(Space s) { return {0.0, 0.0, s}; }

    bool is_zero() const { return re == 0.0 && im == 0.0; }

    friend RingScalar operator+(RingScalar a, RingScalar b) {
        require_same_space(a.space, b.space, "ring add");
        return {a.re + b.re, a.im + b.im, a.space};
    }
    friend RingScalar operator-(RingScalar a, RingScalar b) {
        require_same_space(a.space, b.space, "ring sub");
        return {a.re - b.re, a.im - b.im, a.space};
    }
    RingScalar operator-() const { return {-re, -im, space}; }
    friend RingScalar operator*(RingScalar a, RingScalar b) {
        require_same_space(a.space, b.space, "ring mul");
        const double sg = sigma(a.space);
        return {a.re * b.re + sg * a.im * b.im, a.re * b.im + a.im * b.re, a.space};
    }
    friend RingScalar operator*(double s, RingScalar a) { return {s * a.re, s * a.im, a.space}; }
    friend RingScalar operator*(RingScalar a, double s) { return s * a; }
};

// u -> -u conjugation.
inline RingScalar conj_u(RingScalar a) { return {a.re, -a.im, a.space}; }

// a * conj_u(a) = re^2 - sigma*im^2. Vanishes on nonzero elements only for sigma=+1 (re = ±im),
// the ring's zero divisors.
inline double modulus2(RingScalar a) { return a.re * a.re - sigma(a.space) * a.im * a.im; }

// Euclidean magnitude of the two components; residual metric, not a ring notion.
inline double component_norm(RingScalar a) { return std::hypot(a.re, a.im); }

inline bool is_zero_divisor(RingScalar a) { return !a.is_zero() && modulus2(a) == 0.0; }

inline RingScalar invert(RingScalar a) {
    if (a.is_zero()) throw NonInvertible("ring invert of zero");
    const double m2 = modulus2(a);
    if (m2 == 0.0)
        throw ZeroDivisor("ring invert: re^2 = im^2 over the double numbers");
    return {a.re / m2, -a.im / m2, a.space};
}

// Square root defined only on the positive reals of the ring.
inline RingScalar sqrt_real(RingScalar a) {
    if (a.im != 0.0) throw SqrtDomain("sqrt_real: nonzero u-component");
    if (a.re <= 0.0) throw SqrtDomain("sqrt_real: non-positive real part");
    return {std::sqrt(a.re), 0.0, a.space};
}

// 3-vector with ring-scalar components, stored as two real vectors: re + im*u.
struct RingVector3 {
    Vec3 re{};
    Vec3 im{};
    Space space = Space::Sphere;

    static RingVector3 real(Vec3 v, Space s) { return {v, {}, s}; }
    static RingVector3 imaginary(Vec3 v, Space s) { return {{}, v, s}; }
    static RingVector3 zero(Space s) { return {{}, {}, s}; }

    RingScalar comp(int i) const { return {re[i], im[i], space}; }

    friend RingVector3 operator+(const RingVector3& a, const RingVector3& b) {
        require_same_space(a.space, b.space, "ring vector add");
        return {a.re + b.re, a.im + b.im, a.space};
    }
    friend RingVector3 operator-(const RingVector3& a, const RingVector3& b) {
        require_same_space(a.space, b.space, "ring vector sub");
        return {a.re - b.re, a.im - b.im, a.space};
    }
    RingVector3 operator-() const { return {-re, -im, space}; }
    friend RingVector3 operator*(double s, const RingVector3& a) {
        return {s * a.re, s * a.im, a.space};
    }
    friend RingVector3 operator*(const RingVector3& a, double s) { return s * a; }
    friend RingVector3 operator*(RingScalar s, const RingVector3& a) {
        require_same_space(s.space, a.space, "ring vector scale");
        const double sg = sigma(s.space);
        return {s.re * a.re + sg * s.im * a.im, s.re * a.im + s.im * a.re, a.space};
    }
    friend RingVector3 operator*(const RingVector3& a, RingScalar s) { return s * a; }
};

// Plain (unconjugated) ring-bilinear dot product.
inline RingScalar dot(const RingVector3& a, const RingVector3& b) {
    require_same_space(a.space, b.space, "ring dot");
    const double sg = sigma(a.space);
    return {dot(a.re, b.re) + sg * dot(a.im, b.im), dot(a.re, b.im) + dot(a.im, b.re), a.space};
}

inline RingVector3 cross(const RingVector3& a, const RingVector3& b) {
    require_same_space(a.space, b.space, "ring cross");
    const double sg = sigma(a.space);
    return {cross(a.re, b.re) + sg * cross(a.im, b.im), cross(a.re, b.im) + cross(a.im, b.re),
            a.space};
}

inline double component_norm(const RingVector3& a) {
    return std::sqrt(norm2(a.re) + norm2(a.im));
}

}  // namespace curvebody
