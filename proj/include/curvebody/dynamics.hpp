#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "curvebody/twobody.hpp"

namespace curvebody {

// Chart-space phase point of the two-body system.
struct PhaseState {
    Vec3 v1{};
    Vec3 v2{};
    Vec3 w1{};  // d/dt v1
    Vec3 w2{};  // d/dt v2
    Space space = Space::Sphere;
};

inline TwoBodyConfig to_config(const PhaseState& st, double m1, double m2) {
    return {m1, m2, {st.v1, st.space}, {st.v2, st.space}, st.w1, st.w2};
}

inline PhaseState random_phase_state(Rng& rng, Space sp, double vmax = 0.5,
                                     double wmax = 0.6) {
    return {random_chart_point(rng, sp, vmax).v, random_chart_point(rng, sp, vmax).v,
            rng.vec3(wmax), rng.vec3(wmax), sp};
}

// Everything the kinetic evaluators need, built once per state.
struct KinematicBundle {
    TwoBodyConfig cfg;
    CenterOfMass cm;
    RelativeSet rel;
    KinematicRates rates;
};

inline KinematicBundle make_bundle(const PhaseState& st, double m1, double m2) {
    TwoBodyConfig cfg = to_config(st, m1, m2);
    CenterOfMass cm = center_of_mass(cfg);
    RelativeSet rel = relative_variables(cfg, cm);
    KinematicRates rates = kinematic_rates(cfg, cm);
    return {cfg, cm, rel, rates};
}

// ---------------------------------------------------------------------------
// Ground-truth kinetic energy: embedding form and chart form.
// ---------------------------------------------------------------------------

// T = (1/2) * sum_i m_i * real(Xdot_i * bar(Xdot_i)).
inline double kinetic_embedding(const PhaseState& st, double m1, double m2) {
    const ChartPoint p1{st.v1, st.space}, p2{st.v2, st.space};
    const Biquaternion x1d = point_velocity(p1, st.w1);
    const Biquaternion x2d = point_velocity(p2, st.w2);
    return 0.5 * (m1 * norm(x1d).re + m2 * norm(x2d).re);
}

// T = (1/2) * sum_i m_i * g_ab(v_i) w_i^a w_i^b with the pullback metric.
inline double kinetic_chart(const PhaseState& st, double m1, double m2) {
    const ChartPoint p1{st.v1, st.space}, p2{st.v2, st.space};
    return 0.5 * (m1 * quadratic_form(metric_tensor(p1), st.w1, st.w1) +
                  m2 * quadratic_form(metric_tensor(p2), st.w2, st.w2));
}

// Variant metric with the opposite inner sign, (delta_ab + sigma*v_a*v_b/lambda)/lambda.
// Not the pullback of the embedding; evaluated only so the audit can report how far it
// deviates from the ground truth.
inline Mat3 metric_tensor_variant(const ChartPoint& p) {
    validate_chart_point(p);
    const double sg = sigma(p.space);
    const double lam = p.lambda();
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g(i, j) = ((i == j ? 1.0 : 0.0) + sg * p.v[i] * p.v[j] / lam) / lam;
    return g;
}

inline double kinetic_chart_variant(const PhaseState& st, double m1, double m2) {
    const ChartPoint p1{st.v1, st.space}, p2{st.v2, st.space};
    return 0.5 * (m1 * quadratic_form(metric_tensor_variant(p1), st.w1, st.w1) +
                  m2 * quadratic_form(metric_tensor_variant(p2), st.w2, st.w2));
}

// ---------------------------------------------------------------------------
// Center-of-mass / relative decomposition of the kinetic energy.
// ---------------------------------------------------------------------------

namespace detail {

// Splits (1/2)*total into its real scalar value and the magnitude of everything else.
struct ScalarSplit {
    double value;
    double nonscalar;
};

inline ScalarSplit split_half(const Biquaternion& total) {
    Biquaternion rem = total;
    rem.s.re = 0.0;
    return {0.5 * total.s.re, 0.5 * component_norm(rem)};
}

}  // namespace detail

struct CmRelKinetic {
    double value = 0.0;              // real scalar part, T scale
    double nonscalar_residual = 0.0; // magnitude of non-real-scalar leftovers
    double cross_magnitude = 0.0;    // coupling terms mixing CM and relative motion
};

// Kinetic energy as   sigma*(m1*Y1dot*bar(Y1dot) + m2*Y2dot*bar(Y2dot))
//                   + (m1+m2)*Xcdot*bar(Xcdot)
//                   + sum_i m_i*(Y_i*Xcdot*bar(Xc)*bar(Y_i dot) + Y_i dot*Xc*bar(Xcdot)*bar(Y_i)),
// halved. The sign on the relative terms is the space sign; the CM term carries +1 in
// both spaces (resolved by the audit so the form equals the embedding kinetic energy).
// The last group couples CM and relative motion and vanishes for dumbbell states.
inline CmRelKinetic kinetic_cm_rel(const PhaseState& st, double m1, double m2) {
    const KinematicBundle b = make_bundle(st, m1, m2);
    const double sg = sigma(st.space);
    const Biquaternion& xc = b.cm.Xc;
    const Biquaternion& xcd = b.rates.Xc_dot;

    const Biquaternion rel_part =
        sg * (m1 * (b.rates.Y1_dot * bar(b.rates.Y1_dot)) +
              m2 * (b.rates.Y2_dot * bar(b.rates.Y2_dot)));
    const Biquaternion cm_part = (m1 + m2) * (xcd * bar(xcd));
    const Biquaternion cross =
        m1 * (b.rel.Y1 * xcd * bar(xc) * bar(b.rates.Y1_dot) +
              b.rates.Y1_dot * xc * bar(xcd) * bar(b.rel.Y1)) +
        m2 * (b.rel.Y2 * xcd * bar(xc) * bar(b.rates.Y2_dot) +
              b.rates.Y2_dot * xc * bar(xcd) * bar(b.rel.Y2));

    const auto [value, nonscalar] = detail::split_half(rel_part + cm_part + cross);
    return {value, nonscalar, 0.5 * component_norm(cross)};
}

// ---------------------------------------------------------------------------
// Kinetic energy through the relative transform Y12 alone.
// ---------------------------------------------------------------------------

struct Y12Kinetic {
    double value = 0.0;            // corrected variant (CM term +1 in both spaces)
    double value_as_printed = 0.0; // CM term carrying the space sign
    double nonscalar_residual = 0.0;
};

inline Y12Kinetic kinetic_y12(const PhaseState& st, double m1, double m2) {
    const KinematicBundle b = make_bundle(st, m1, m2);
    const double sg = sigma(st.space);
    const double mm = m1 * m2;
    const double M = m1 + m2;
    const Biquaternion& y = b.rel.Y12;
    const Biquaternion& yd = b.rates.Y12_dot;
    const Biquaternion& xc = b.cm.Xc;
    const Biquaternion& xcd = b.rates.Xc_dot;
    const double c = y.s.re;
    const double cd = yd.s.re;
    const double F = m1 * m1 + m2 * m2 + 2.0 * mm * c;

    const Biquaternion rel_term = (sg * mm * M / F) * (yd * bar(yd));
    const Biquaternion rate_term =
        Biquaternion::scalar(RingScalar::real(-sg * mm * mm * M * cd * cd / (F * F), st.space));
    const Biquaternion cm_term = M * (xcd * bar(xcd));

    const Biquaternion cross_a =
        (mm / F) * (m1 * (y * xcd * bar(xc) * bar(yd) + yd * xc * bar(xcd) * bar(y)) +
                    m2 * (bar(y) * xcd * bar(xc) * yd + bar(yd) * xc * bar(xcd) * y));
    const Biquaternion cross_b =
        (mm / F) * (m1 * (xcd * bar(xc) * yd + bar(yd) * xc * bar(xcd)) +
                    m2 * (xcd * bar(xc) * bar(yd) + yd * xc * bar(xcd)));

    const Biquaternion common = rel_term + rate_term + cross_a + cross_b;
    const auto [value, nonscalar] = detail::split_half(common + cm_term);
    const auto printed = detail::split_half(common + sg * cm_term);
    return {value, printed.value, nonscalar};
}

// ---------------------------------------------------------------------------
// Polar parametrization of the relative transform.
// ---------------------------------------------------------------------------

// Y12 = cos r + n sin r (sphere) or cosh r + n sinh r (hyperbolic), with unit axis n,
// dot(n, n) = sigma.
struct PolarRelative {
    double r = 0.0;
    double rdot = 0.0;
    RingVector3 n;
    RingVector3 ndot;
    double F = 0.0;  // m1^2 + m2^2 + 2 m1 m2 cos r (cosh r)
    double axis_norm_residual = 0.0;
};

inline PolarRelative polar_decompose(const RelativeSet& rel, const KinematicRates& rates,
                                     double m1, double m2) {
    const Space sp = rel.Y12.space();
    const double sg = sigma(sp);
    const double c = rel.Y12.s.re;
    const double cd = rates.Y12_dot.s.re;

    double r, sr, cr, rdot;
    if (sp == Space::Sphere) {
        if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
            throw NumericalDomain("polar_decompose: cosine out of range");
        const double cc = std::min(1.0, std::max(-1.0, c));
        r = std::acos(cc);
        // Exactly coincident inputs reach here with c = 1 +/- a few ulp; acos maps
        // that rounding noise to r ~ 1.5e-8..4.5e-8, so the guard sits at 1e-7.
        if (r < 1e-7) throw CoincidentPoints("polar_decompose: r below 1e-7");
        if (3.14159265358979323846 - r < 1e-7)
            throw ChartInfinity("polar_decompose: antipodal separation");
        sr = std::sin(r);
        cr = std::cos(r);
        rdot = -cd / sr;
    } else {
        if (c < 1.0 - 1e-12)
            throw NumericalDomain("polar_decompose: hyperbolic cosine below 1");
        const double cc = std::max(1.0, c);
        r = std::acosh(cc);
        if (r < 1e-7) throw CoincidentPoints("polar_decompose: r below 1e-7");
        sr = std::sinh(r);
        cr = std::cosh(r);
        rdot = cd / sr;
    }

    const RingVector3 n = (1.0 / sr) * rel.Y12.v;
    const RingVector3 ndot = (1.0 / sr) * (rates.Y12_dot.v - (rdot * cr) * n);
    const RingScalar nn = dot(n, n);
    const double axis_residual = std::hypot(nn.re - sg, nn.im);
    const double F = m1 * m1 + m2 * m2 + 2.0 * m1 * m2 * c;
    return {r, rdot, n, ndot, F, axis_residual};
}

// Frozen sign corrections for the polar form, calibrated once against the embedding
// kinetic energy and then fixed (never re-fitted per call).
//   xc_sign: coefficient of the (m1+m2)*Xcdot*bar(Xcdot) term.
//   bracket_signs: signs of the four mass-difference coupling terms
//     t1 = (n E + E n)*rdot            t2 = (ndot E + E ndot)*s*c
//     t3 = (n E + E n)*rdot*c          t4 = (ndot E + E ndot)*s
//   with E = Xcdot*bar(Xc), s/c the sine/cosine (sinh/cosh) of r.
struct PolarCorrections {
    int xc_sign = +1;
    std::array<int, 4> bracket_signs{-1, -1, +1, +1};

    bool operator==(const PolarCorrections& o) const {
        return xc_sign == o.xc_sign && bracket_signs == o.bracket_signs;
    }
};

inline PolarCorrections frozen_polar_corrections() { return {+1, {-1, -1, +1, +1}}; }

// The literal reading: the CM term carries the space sign, the coupling bracket reads
// (+, +, -, -) with the line-broken operator taken as +.
inline PolarCorrections printed_polar_corrections(Space sp) {
    return {sp == Space::Sphere ? +1 : -1, {+1, +1, -1, -1}};
}

namespace detail {

// Unhalved polar form of the kinetic energy under a given sign set.
inline Biquaternion polar_total(const PolarRelative& pol, const Biquaternion& xc,
                                const Biquaternion& xcd, double m1, double m2,
                                const PolarCorrections& corr) {
    const Space sp = xc.space();
    const double sg = sigma(sp);
    const double mm = m1 * m2;
    const double M = m1 + m2;
    const double F = pol.F;
    const double sr = sp == Space::Sphere ? std::sin(pol.r) : std::sinh(pol.r);
    const double cr = sp == Space::Sphere ? std::cos(pol.r) : std::cosh(pol.r);

    const Biquaternion n = Biquaternion::vector(pol.n);
    const Biquaternion nd = Biquaternion::vector(pol.ndot);
    const Biquaternion e = xcd * bar(xc);

    // First bracket: rdot^2 + sigma*dot(ndot,ndot)*s^2 + (nd e n - n e nd)*s^2.
    const Biquaternion bracket1 =
        Biquaternion::scalar(RingScalar::real(pol.rdot * pol.rdot, sp)) +
        Biquaternion::scalar((sg * sr * sr) * dot(pol.ndot, pol.ndot)) +
        (sr * sr) * (nd * e * n - n * e * nd);

    const Biquaternion first = (mm * M / F) * bracket1;
    const Biquaternion second = Biquaternion::scalar(RingScalar::real(
        -sg * mm * mm * M * sr * sr * pol.rdot * pol.rdot / (F * F), sp));
    const Biquaternion cm_term = (corr.xc_sign * M) * (xcd * bar(xcd));

    const Biquaternion ne_en = n * e + e * n;
    const Biquaternion nde_end = nd * e + e * nd;
    const Biquaternion t1 = pol.rdot * ne_en;
    const Biquaternion t2 = (sr * cr) * nde_end;
    const Biquaternion t3 = (pol.rdot * cr) * ne_en;
    const Biquaternion t4 = sr * nde_end;
    const Biquaternion bracket =
        (mm * (m1 - m2) / F) *
        (double(corr.bracket_signs[0]) * t1 + double(corr.bracket_signs[1]) * t2 +
         double(corr.bracket_signs[2]) * t3 + double(corr.bracket_signs[3]) * t4);

    return first + second + cm_term + bracket;
}

}  // namespace detail

struct PolarKinetic {
    double value_as_printed = 0.0;
    double value_corrected = 0.0;
    PolarCorrections correction_flags;
    double nonscalar_residual = 0.0;
};

inline PolarKinetic kinetic_polar(const PhaseState& st, double m1, double m2) {
    const KinematicBundle b = make_bundle(st, m1, m2);
    const PolarRelative pol = polar_decompose(b.rel, b.rates, m1, m2);
    const PolarCorrections frozen = frozen_polar_corrections();
    const Biquaternion corrected =
        detail::polar_total(pol, b.cm.Xc, b.rates.Xc_dot, m1, m2, frozen);
    const Biquaternion printed = detail::polar_total(
        pol, b.cm.Xc, b.rates.Xc_dot, m1, m2, printed_polar_corrections(st.space));
    const auto cor = detail::split_half(corrected);
    const auto pr = detail::split_half(printed);
    return {pr.value, cor.value, frozen, cor.nonscalar};
}

// Search all sign combinations for the one minimizing the worst-case residual against
// the embedding kinetic energy over a random calibration set. Used by tests to confirm
// the frozen set; never called in production paths.
inline PolarCorrections calibrate_polar_corrections(Space sp, std::uint64_t seed,
                                                    int cases = 100) {
    PolarCorrections best;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int combo = 0; combo < 32; ++combo) {
        PolarCorrections c;
        c.xc_sign = (combo & 16) ? -1 : +1;
        for (int k = 0; k < 4; ++k) c.bracket_signs[k] = (combo & (1 << k)) ? -1 : +1;
        double worst = 0.0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
            const PhaseState st = random_phase_state(rng, sp);
            double m1 = rng.range(0.4, 2.4), m2 = rng.range(0.4, 2.4);
            if (std::abs(m1 - m2) < 0.3) m2 += 0.5;
            const KinematicBundle b = make_bundle(st, m1, m2);
            const PolarRelative pol = polar_decompose(b.rel, b.rates, m1, m2);
            const Biquaternion tot =
                detail::polar_total(pol, b.cm.Xc, b.rates.Xc_dot, m1, m2, c);
            const double t = kinetic_embedding(st, m1, m2);
            worst = std::max(worst, std::abs(detail::split_half(tot).value - t));
        }
        if (worst < best_residual) {
            best_residual = worst;
            best = c;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Equal-mass and small-separation reductions.
// ---------------------------------------------------------------------------

struct EqualMassKinetic {
    double value_as_printed = 0.0;
    double value_corrected = 0.0;
};

// L' = m[2 sin^2(r/2) (dot(ndot,ndot) + nd e n - n e nd) + rdot^2/2 + 2 Xcdot bar(Xcdot)]
// on the sphere; hyperbolic analog has sinh^2(r/2), -dot(ndot,ndot) and (as printed) a
// negated CM term, which the corrected variant flips to +. Returned halved (T scale).
inline EqualMassKinetic kinetic_equal_mass(const PhaseState& st, double m) {
    const KinematicBundle b = make_bundle(st, m, m);
    const PolarRelative pol = polar_decompose(b.rel, b.rates, m, m);
    const Space sp = st.space;
    const double sg = sigma(sp);
    const double half = 0.5 * pol.r;
    const double sh = sp == Space::Sphere ? std::sin(half) : std::sinh(half);

    const Biquaternion n = Biquaternion::vector(pol.n);
    const Biquaternion nd = Biquaternion::vector(pol.ndot);
    const Biquaternion e = b.rates.Xc_dot * bar(b.cm.Xc);
    const Biquaternion angular =
        Biquaternion::scalar(sg * dot(pol.ndot, pol.ndot)) + (nd * e * n - n * e * nd);
    const Biquaternion ec = b.rates.Xc_dot * bar(b.rates.Xc_dot);

    const Biquaternion common =
        (2.0 * m * sh * sh) * angular +
        Biquaternion::scalar(RingScalar::real(0.5 * m * pol.rdot * pol.rdot, sp));
    const double corrected = detail::split_half(common + (2.0 * m) * ec).value;
    const double printed = detail::split_half(common + (2.0 * m * sg) * ec).value;
    return {printed, corrected};
}

// Leading small-separation form, evaluated exactly as written (no half):
//   L' = (m1 m2/(m1+m2)) rdot^2 +/- (m1+m2) real(Xcdot bar(Xcdot)),
// with + on the sphere and - in hyperbolic space.
inline double kinetic_small_r(const PhaseState& st, double m1, double m2) {
    const KinematicBundle b = make_bundle(st, m1, m2);
    const PolarRelative pol = polar_decompose(b.rel, b.rates, m1, m2);
    const double pm = st.space == Space::Sphere ? 1.0 : -1.0;
    const double ec = (b.rates.Xc_dot * bar(b.rates.Xc_dot)).s.re;
    return (m1 * m2 / (m1 + m2)) * pol.rdot * pol.rdot + pm * (m1 + m2) * ec;
}

// ---------------------------------------------------------------------------
// Central potentials.
// ---------------------------------------------------------------------------

struct PotentialSpec {
    enum class Kind { Free, Coulomb, Oscillator };
    Kind kind = Kind::Free;
    double alpha = 1.0;  // coulomb strength
    double omega = 1.0;  // oscillator frequency

    static PotentialSpec free() { return {Kind::Free, 0.0, 0.0}; }
    static PotentialSpec coulomb(double a) { return {Kind::Coulomb, a, 0.0}; }
    static PotentialSpec oscillator(double w) { return {Kind::Oscillator, 0.0, w}; }
};

struct PotentialValue {
    double V = 0.0;
    double dVdr = 0.0;
};

inline constexpr double kCollisionThreshold = 1e-6;

// Closed forms: coulomb V = -alpha*cot r (sphere) / -alpha*coth r (hyperbolic);
// oscillator V = (omega^2/2)*tan^2 r / tanh^2 r; free V = 0.
inline PotentialValue potential_eval(const PotentialSpec& spec, double r, Space sp) {
    switch (spec.kind) {
        case PotentialSpec::Kind::Free:
            return {0.0, 0.0};
        case PotentialSpec::Kind::Coulomb: {
            if (r < kCollisionThreshold)
                throw PotentialSingularity("coulomb potential: collision");
            if (sp == Space::Sphere &&
                3.14159265358979323846 - r < kCollisionThreshold)
                throw PotentialSingularity("coulomb potential: antipodal singularity");
            if (sp == Space::Sphere) {
                const double s = std::sin(r);
                return {-spec.alpha * std::cos(r) / s, spec.alpha / (s * s)};
            }
            const double s = std::sinh(r);
            return {-spec.alpha * std::cosh(r) / s, spec.alpha / (s * s)};
        }
        case PotentialSpec::Kind::Oscillator: {
            const double w2 = spec.omega * spec.omega;
            if (sp == Space::Sphere) {
                const double t = std::tan(r);
                const double c = std::cos(r);
                return {0.5 * w2 * t * t, w2 * t / (c * c)};
            }
            const double t = std::tanh(r);
            const double c = std::cosh(r);
            return {0.5 * w2 * t * t, w2 * t / (c * c)};
        }
    }
    return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// Formula audit.
// ---------------------------------------------------------------------------

struct FormulaEntry {
    std::optional<double> value;
    std::string error;  // non-empty when the evaluator threw
};

struct KineticReport {
    FormulaEntry embedding;       // ground truth
    FormulaEntry chart;           // pullback-metric form
    FormulaEntry cm_rel;          // CM/relative split
    FormulaEntry relative_form;   // Y12 form, corrected
    FormulaEntry relative_printed;
    FormulaEntry polar_corrected;
    FormulaEntry polar_printed;
    FormulaEntry equal_corrected;  // only when m1 == m2 exactly
    FormulaEntry equal_printed;
    FormulaEntry small_sep;        // leading small-separation form, as written

    double cm_rel_nonscalar = 0.0;
    double relative_nonscalar = 0.0;
    double polar_nonscalar = 0.0;
    double cross_magnitude = 0.0;          // CM/relative coupling strength
    double metric_variant_residual = 0.0;  // |variant-metric T - chart T|
    // |T - (mu*rdot^2 + M*real(Ec))/2|: the halved, sign-matched small-sep form.
    std::optional<double> small_matched_residual;
    PolarCorrections correction_flags;
    bool equal_mass_case = false;
};

inline KineticReport audit(const PhaseState& st, double m1, double m2) {
    KineticReport rep;
    rep.correction_flags = frozen_polar_corrections();
    rep.equal_mass_case = (m1 == m2);

    auto guard = [](FormulaEntry& e, auto&& fn) {
        try {
            e.value = fn();
        } catch (const Error& err) {
            e.error = err.what();
        }
    };

    guard(rep.embedding, [&] { return kinetic_embedding(st, m1, m2); });
    guard(rep.chart, [&] { return kinetic_chart(st, m1, m2); });
    try {
        rep.metric_variant_residual =
            std::abs(kinetic_chart_variant(st, m1, m2) - kinetic_chart(st, m1, m2));
    } catch (const Error&) {
    }
    guard(rep.cm_rel, [&] {
        const CmRelKinetic k = kinetic_cm_rel(st, m1, m2);
        rep.cm_rel_nonscalar = k.nonscalar_residual;
        rep.cross_magnitude = k.cross_magnitude;
        return k.value;
    });
    guard(rep.relative_form, [&] {
        const Y12Kinetic k = kinetic_y12(st, m1, m2);
        rep.relative_nonscalar = k.nonscalar_residual;
        rep.relative_printed.value = k.value_as_printed;
        return k.value;
    });
    guard(rep.polar_corrected, [&] {
        const PolarKinetic k = kinetic_polar(st, m1, m2);
        rep.polar_nonscalar = k.nonscalar_residual;
        rep.polar_printed.value = k.value_as_printed;
        return k.value_corrected;
    });
    if (rep.equal_mass_case) {
        guard(rep.equal_corrected, [&] {
            const EqualMassKinetic k = kinetic_equal_mass(st, m1);
            rep.equal_printed.value = k.value_as_printed;
            return k.value_corrected;
        });
    }
    guard(rep.small_sep, [&] { return kinetic_small_r(st, m1, m2); });
    if (rep.embedding.value) {
        try {
            const KinematicBundle b = make_bundle(st, m1, m2);
            const PolarRelative pol = polar_decompose(b.rel, b.rates, m1, m2);
            const double ec = (b.rates.Xc_dot * bar(b.rates.Xc_dot)).s.re;
            const double matched =
                0.5 * ((m1 * m2 / (m1 + m2)) * pol.rdot * pol.rdot + (m1 + m2) * ec);
            rep.small_matched_residual = std::abs(*rep.embedding.value - matched);
        } catch (const Error&) {
        }
    }
    return rep;
}

}  // namespace curvebody
