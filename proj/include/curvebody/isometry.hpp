#pragma once

#include "curvebody/random.hpp"

namespace curvebody {

// Orientation-preserving isometry represented by a unit element A (A*bar(A) = 1),
// acting on embeddings as X -> A * X * star(bar(A)). This action preserves
// Minkowski type, the ambient quadratic form, and (in hyperbolic space) the sheet.
class Isometry {
  public:
    explicit Isometry(Biquaternion a) : a_(std::move(a)) {
        const Biquaternion res = a_ * bar(a_) - Biquaternion::identity(a_.space());
        if (component_norm(res) > 1e-10)
            throw NotUnit("Isometry: A*bar(A) != 1");
    }

    const Biquaternion& element() const { return a_; }
    Space space() const { return a_.space(); }

    Biquaternion apply(const Biquaternion& x) const { return a_ * x * star(bar(a_)); }

    ChartPoint apply(const ChartPoint& p) const {
        return embedding_to_point(apply(point_to_embedding(p)));
    }

    Isometry inverse() const { return Isometry(bar(a_)); }

  private:
    Biquaternion a_;
};

// Composition: (a*b) acts as a after b.
inline Isometry compose(const Isometry& a, const Isometry& b) {
    return Isometry(a.element() * b.element());
}

// Random unit element: a pair transform from the base point to a random chart point
// (a "boost"/translation) times a real unit quaternion (a rotation about the base
// point). Both factors are unit, so the product is.
inline Isometry random_isometry(Rng& rng, Space sp) {
    const ChartPoint origin{{0.0, 0.0, 0.0}, sp};
    const Biquaternion boost = pair_transform(origin, random_chart_point(rng, sp, 0.6));

    // Real unit quaternion via normalized 4-vector (rejection keeps it well-conditioned).
    double w, x, y, z, n2;
    do {
        w = rng.range(-1.0, 1.0);
        x = rng.range(-1.0, 1.0);
        y = rng.range(-1.0, 1.0);
        z = rng.range(-1.0, 1.0);
        n2 = w * w + x * x + y * y + z * z;
    } while (n2 < 0.01 || n2 > 1.0);
    const double inv = 1.0 / std::sqrt(n2);
    const Biquaternion rot{RingScalar::real(w * inv, sp),
                           RingVector3::real({x * inv, y * inv, z * inv}, sp)};

    return Isometry(boost * rot);
}

}  // namespace curvebody
