#pragma once

#include "curvebody/isometry.hpp"

namespace curvebody {

// Two point masses on the curved space: chart positions and chart velocities.
struct TwoBodyConfig {
    double m1 = 1.0;
    double m2 = 1.0;
    ChartPoint p1{};
    ChartPoint p2{};
    Vec3 v1dot{};
    Vec3 v2dot{};

    Space space() const { return p1.space; }
};

inline void validate_config(const TwoBodyConfig& cfg) {
    require_same_space(cfg.p1.space, cfg.p2.space, "two-body config");
    if (!(cfg.m1 > 0.0) || !(cfg.m2 > 0.0))
        throw ValidationError("mass", "masses must be positive");
    validate_chart_point(cfg.p1);
    validate_chart_point(cfg.p2);
}

struct CenterOfMass {
    Biquaternion Xc;  // unit Minkowski-type embedding
    ChartPoint qc;    // its chart point
};

// Mass-weighted embedding sum S = m1*X1 + m2*X2 = W*(u + sigma*vc); its chart point is
// vc = (sum m_i v_i / sqrt(lambda_i)) / (sum m_i / sqrt(lambda_i)). Computed via the
// chart route; the normalization weight W^2*lambda_c must stay away from zero.
inline CenterOfMass center_of_mass(const TwoBodyConfig& cfg) {
    validate_config(cfg);
    const double w1 = cfg.m1 / std::sqrt(cfg.p1.lambda());
    const double w2 = cfg.m2 / std::sqrt(cfg.p2.lambda());
    const double w = w1 + w2;
    const Vec3 vc = (1.0 / w) * (w1 * cfg.p1.v + w2 * cfg.p2.v);
    const ChartPoint qc{vc, cfg.space()};
    if (w * w * qc.lambda() < 1e-10)
        throw DegenerateCM("center_of_mass: normalization weight vanished");
    return {point_to_embedding(qc), qc};
}

// Audit route: normalize S directly by sqrt(sigma * norm(S)). Equal to center_of_mass
// in exact arithmetic.
inline CenterOfMass center_of_mass_embedding(const TwoBodyConfig& cfg) {
    validate_config(cfg);
    const Biquaternion s = cfg.m1 * point_to_embedding(cfg.p1) + cfg.m2 * point_to_embedding(cfg.p2);
    const double n = sigma(cfg.space()) * norm(s).re;
    if (n < 1e-10) throw DegenerateCM("center_of_mass_embedding: norm(S) degenerate");
    const Biquaternion xc = (1.0 / std::sqrt(n)) * s;
    return {xc, embedding_to_point(xc)};
}

// Relative transforms with the center of mass as anchor:
//   Y12 carries X1 to X2,  Y1 carries Xc to X1,  Y2 carries Xc to X2,
// so Y12 = Y2 * bar(Y1) exactly. qy is the chart vector of Y12.
struct RelativeSet {
    Biquaternion Y12;
    Biquaternion Y1;
    Biquaternion Y2;
    PairVector qy;
};

inline RelativeSet relative_variables(const TwoBodyConfig& cfg, const CenterOfMass& cm) {
    const Biquaternion y12 = pair_transform(cfg.p1, cfg.p2);
    const Biquaternion y1 = pair_transform(cm.qc, cfg.p1);
    const Biquaternion y2 = pair_transform(cm.qc, cfg.p2);
    return {y12, y1, y2, transform_chart_vector(y12)};
}

inline RelativeSet relative_variables(const TwoBodyConfig& cfg) {
    return relative_variables(cfg, center_of_mass(cfg));
}

// Per-particle chart offsets from the center of mass, split along qy by the mass
// ratio through s = 1/scalar(Y12). Only defined while scalar(Y12) > 0 (inside the
// half-chart around coincidence). Composition identities, with <a, b> the
// triangle rule vector_add(a, b):
//   q1 = <qy1, qc>,  q2 = <qy2, qc>,  qy = <qy2, -qy1>.
struct PerParticleOffsets {
    PairVector qy1;  // offset of particle 1 (anti-parallel to qy)
    PairVector qy2;  // offset of particle 2 (parallel to qy)
    double s_val = 1.0;
};

inline PerParticleOffsets per_particle_offsets(const TwoBodyConfig& cfg,
                                               const RelativeSet& rel) {
    const double sc = rel.Y12.s.re;
    if (!(sc > 0.0))
        throw ChartInfinity("per_particle_offsets: scalar(Y12) <= 0");
    const double s_val = 1.0 / sc;
    const Space sp = cfg.space();
    const RingScalar d1 = RingScalar::real(1.0 + (cfg.m1 / cfg.m2) * s_val, sp);
    const RingScalar d2 = RingScalar::real(1.0 + (cfg.m2 / cfg.m1) * s_val, sp);
    return {-1.0 * (rel.qy * invert(d1)), rel.qy * invert(d2), s_val};
}

// Time derivatives of the kinematic objects induced by the chart velocities.
struct KinematicRates {
    Biquaternion X1_dot;
    Biquaternion X2_dot;
    Biquaternion Xc_dot;
    Biquaternion Y12_dot;
    Biquaternion Y1_dot;
    Biquaternion Y2_dot;
};

inline KinematicRates kinematic_rates(const TwoBodyConfig& cfg, const CenterOfMass& cm) {
    const Space sp = cfg.space();
    const double sg = sigma(sp);
    const Biquaternion x1 = point_to_embedding(cfg.p1);
    const Biquaternion x2 = point_to_embedding(cfg.p2);
    const Biquaternion x1d = point_velocity(cfg.p1, cfg.v1dot);
    const Biquaternion x2d = point_velocity(cfg.p2, cfg.v2dot);

    // Xc = S / sqrt(N), N = sigma*norm(S):
    //   Xc_dot = S_dot/sqrt(N) - S*N_dot/(2*N^(3/2)).
    const Biquaternion s = cfg.m1 * x1 + cfg.m2 * x2;
    const Biquaternion sd = cfg.m1 * x1d + cfg.m2 * x2d;
    const double n = sg * norm(s).re;
    const double nd = sg * (sd * bar(s) + s * bar(sd)).s.re;
    const Biquaternion xcd =
        (1.0 / std::sqrt(n)) * sd - (nd / (2.0 * n * std::sqrt(n))) * s;

    const double pm = sp == Space::Sphere ? 1.0 : -1.0;
    const Biquaternion y12d = pm * (x2d * bar(x1) + x2 * bar(x1d));
    const Biquaternion y1d = pm * (x1d * bar(cm.Xc) + x1 * bar(xcd));
    const Biquaternion y2d = pm * (x2d * bar(cm.Xc) + x2 * bar(xcd));
    return {x1d, x2d, xcd, y12d, y1d, y2d};
}

inline KinematicRates kinematic_rates(const TwoBodyConfig& cfg) {
    return kinematic_rates(cfg, center_of_mass(cfg));
}

// Push a configuration through an isometry: embeddings and their rates transform by
// X -> A*X*star(bar(A)), then convert back to chart data.
inline TwoBodyConfig transform_config(const TwoBodyConfig& cfg, const Isometry& iso) {
    validate_config(cfg);
    const Biquaternion x1 = iso.apply(point_to_embedding(cfg.p1));
    const Biquaternion x2 = iso.apply(point_to_embedding(cfg.p2));
    const Biquaternion x1d = iso.apply(point_velocity(cfg.p1, cfg.v1dot));
    const Biquaternion x2d = iso.apply(point_velocity(cfg.p2, cfg.v2dot));
    const auto [p1, v1dot] = embedding_rates_to_chart(x1, x1d);
    const auto [p2, v2dot] = embedding_rates_to_chart(x2, x2d);
    return {cfg.m1, cfg.m2, p1, p2, v1dot, v2dot};
}

}  // namespace curvebody
