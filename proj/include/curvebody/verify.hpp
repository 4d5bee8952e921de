#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "curvebody/integrate.hpp"
#include "curvebody/isometry.hpp"
#include "curvebody/random.hpp"

namespace curvebody {

// Self-check suite: property tests over randomized states plus fixed structural
// checks (geodesic flow, finite-difference cross-checks, energy drift).  Output
// is byte-deterministic for a given (cases, seed, space filter) triple: no
// timestamps, no timing, fixed formatting, single-threaded evaluation.

struct VerifyOptions {
    long cases = 100;
    std::uint64_t seed = 0;
    // 0 = both spaces, +1 = sphere only, -1 = hyperbolic only.
    int space_filter = 0;
};

namespace verify_detail {

enum class RowKind { Below, Above, Range, Report };

struct Row {
    std::string name;
    double value = 0.0;
    RowKind kind = RowKind::Below;
    double lo = 0.0;
    double hi = 0.0;

    bool passed() const {
        switch (kind) {
            case RowKind::Below: return value <= hi;
            case RowKind::Above: return value >= lo;
            case RowKind::Range: return value >= lo && value <= hi;
            case RowKind::Report: return true;
        }
        return false;
    }
};

struct Acc {
    double v = 0.0;
    void fold(double r) {
        r = std::abs(r);
        if (r > v || !(r == r)) v = (r == r) ? r : std::numeric_limits<double>::infinity();
    }
};

inline std::string format_row(const char* space, const Row& row) {
    char buf[160];
    const char* status = row.kind == RowKind::Report ? "REPORT" : (row.passed() ? "PASS  " : "FAIL  ");
    switch (row.kind) {
        case RowKind::Below:
            std::snprintf(buf, sizeof buf, "[%s] %s %-46s value %10.3e  limit <= %8.1e",
                          space, status, row.name.c_str(), row.value, row.hi);
            break;
        case RowKind::Above:
            std::snprintf(buf, sizeof buf, "[%s] %s %-46s value %10.3e  limit >= %8.1e",
                          space, status, row.name.c_str(), row.value, row.lo);
            break;
        case RowKind::Range:
            std::snprintf(buf, sizeof buf, "[%s] %s %-46s value %10.3e  range [%8.1e, %8.1e]",
                          space, status, row.name.c_str(), row.value, row.lo, row.hi);
            break;
        case RowKind::Report:
            std::snprintf(buf, sizeof buf, "[%s] %s %-46s value %10.3e",
                          space, status, row.name.c_str(), row.value);
            break;
    }
    return std::string(buf);
}

// Lift of a chart pair-vector into the algebra: 1 + q.
inline Biquaternion lift_pair_vector(const PairVector& q) {
    return Biquaternion{RingScalar::one(q.space), q};
}

// Radially separated pair on a common geodesic axis with moving, unequal-mass
// center of mass.  Both chart velocities point along the axis, so the relative
// direction is constant in time (ndot == 0) and the motion is purely radial.
inline PhaseState radial_pair_state(Space space, double r) {
    const double theta1 = 0.3;
    const double theta2 = 0.3 + r;
    const double theta1_dot = 0.2;
    const double theta2_dot = 0.7;
    PhaseState st;
    st.space = space;
    if (space == Space::Sphere) {
        st.v1 = Vec3{std::tan(theta1), 0.0, 0.0};
        st.v2 = Vec3{std::tan(theta2), 0.0, 0.0};
        const double c1 = std::cos(theta1), c2 = std::cos(theta2);
        st.w1 = Vec3{theta1_dot / (c1 * c1), 0.0, 0.0};
        st.w2 = Vec3{theta2_dot / (c2 * c2), 0.0, 0.0};
    } else {
        st.v1 = Vec3{std::tanh(theta1), 0.0, 0.0};
        st.v2 = Vec3{std::tanh(theta2), 0.0, 0.0};
        const double c1 = std::cosh(theta1), c2 = std::cosh(theta2);
        st.w1 = Vec3{theta1_dot / (c1 * c1), 0.0, 0.0};
        st.w2 = Vec3{theta2_dot / (c2 * c2), 0.0, 0.0};
    }
    return st;
}

// Residual of the small-separation truncation against the exact kinetic energy,
// for the radial pair above with masses (1, 2).
inline double small_separation_residual(Space space, double r) {
    const double m1 = 1.0, m2 = 2.0;
    const PhaseState st = radial_pair_state(space, r);
    const double exact = kinetic_embedding(st, m1, m2);
    const KinematicBundle b = make_bundle(st, m1, m2);
    const KinematicRates& rates = b.rates;
    const PolarRelative pol = polar_decompose(b.rel, rates, m1, m2);
    const double ec = norm(rates.Xc_dot).re;
    const double mtot = m1 + m2;
    const double matched = 0.5 * ((m1 * m2 / mtot) * pol.rdot * pol.rdot + mtot * ec);
    return std::abs(exact - matched);
}

}  // namespace verify_detail

// Ratio of the small-separation truncation residual at separations r and r/10.
// A quadratic-order truncation error makes this ratio approach 100.
inline double small_separation_order_ratio(Space space, double r_large = 1e-2) {
    const double num = verify_detail::small_separation_residual(space, r_large);
    const double den = verify_detail::small_separation_residual(space, r_large / 10.0);
    return num / den;
}

// Equal-mass circular pair: both bodies at chart radius rho on the x-axis,
// opposite sides, with tangential chart speeds solving the circular-orbit
// condition  w^2 = -rho * a_radial  where a_radial is the radial force term at
// rest.  Returns the state; throws ValidationError if the force is repulsive.
inline PhaseState circular_pair_state(Space space, double rho, double mass,
                                      const PotentialSpec& pot) {
    PhaseState rest;
    rest.space = space;
    rest.v1 = Vec3{rho, 0.0, 0.0};
    rest.v2 = Vec3{-rho, 0.0, 0.0};
    rest.w1 = Vec3{};
    rest.w2 = Vec3{};
    const auto accel = eom_rhs(rest, mass, mass, pot);
    const double a_radial = accel.first.x;
    if (!(a_radial < 0.0)) {
        throw ValidationError("potential", "circular pair requires an attractive radial force");
    }
    const double speed = std::sqrt(-rho * a_radial);
    PhaseState st = rest;
    st.w1 = Vec3{0.0, speed, 0.0};
    st.w2 = Vec3{0.0, -speed, 0.0};
    return st;
}

inline bool run_verify(const VerifyOptions& opt, std::ostream& os) {
    using namespace verify_detail;

    os << "curvebody verify: cases=" << opt.cases << " seed=" << opt.seed << "\n";
    const PolarCorrections frozen = frozen_polar_corrections();
    {
        char line[128];
        std::snprintf(line, sizeof line,
                      "polar correction set: cm term %+d; coupling bracket signs (%+d,%+d,%+d,%+d)",
                      frozen.xc_sign, frozen.bracket_signs[0], frozen.bracket_signs[1],
                      frozen.bracket_signs[2], frozen.bracket_signs[3]);
        os << line << "\n";
    }

    bool all_pass = true;
    const Space spaces[2] = {Space::Sphere, Space::Hyperbolic};
    const long n = opt.cases;

    for (int si = 0; si < 2; ++si) {
        const Space sp = spaces[si];
        if (opt.space_filter == +1 && sp != Space::Sphere) continue;
        if (opt.space_filter == -1 && sp != Space::Hyperbolic) continue;
        const double sg = sigma(sp);
        const char* sname = space_name(sp);

        Acc assoc, conj_laws, norm_mult;
        Acc tri_rule, embed_rt, unit_norm, tangency, rates_rt, metric_inv;
        Acc cm_route, cm_unit, factorization, tri_rel, unit_transforms, split_rt, sep_scale,
            offset_purity, polar_recon, axis_norm, fd_rates;
        Acc dist_inv, y_cov, cm_cov, kin_inv;
        Acc k_chart, k_cmrel, ns_cmrel, k_rel, ns_rel, rep_rel, k_polar, ns_polar, rep_polar,
            k_eq_polar, k_eq_embed, rep_eq, rep_variant;
        Acc db_cm, db_cross;
        double cross_present = 0.0;

        for (long i = 0; i < n; ++i) {
            Rng rng(mix(opt.seed, static_cast<std::uint64_t>(si) * static_cast<std::uint64_t>(n) +
                                       static_cast<std::uint64_t>(i)));

            // --- algebra ---
            const Biquaternion P = random_biquaternion(rng, sp);
            const Biquaternion Q = random_biquaternion(rng, sp);
            const Biquaternion R = random_biquaternion(rng, sp);
            assoc.fold(component_norm((P * Q) * R - P * (Q * R)));
            conj_laws.fold(component_norm(bar(P * Q) - bar(Q) * bar(P)));
            conj_laws.fold(component_norm(star(P * Q) - star(P) * star(Q)));
            conj_laws.fold(component_norm(bar(bar(P)) - P));
            conj_laws.fold(component_norm(star(star(P)) - P));
            norm_mult.fold(component_norm(norm(P * Q) - norm(P) * norm(Q)));

            // --- triangle rule vs lifted product ---
            const PairVector qa = random_pair_vector(rng, sp);
            const PairVector qb = random_pair_vector(rng, sp);
            const PairVector direct = vector_add(qa, qb);
            const PairVector oracle = transform_chart_vector(lift_pair_vector(qa) * lift_pair_vector(qb));
            tri_rule.fold(component_norm(direct - oracle));

            // --- chart / embedding ---
            const ChartPoint cp = random_chart_point(rng, sp);
            const Vec3 cw = rng.vec3(0.6);
            const Biquaternion X = point_to_embedding(cp);
            const Biquaternion Xd = point_velocity(cp, cw);
            embed_rt.fold(norm(embedding_to_point(X).v - cp.v));
            unit_norm.fold(component_norm(norm(X) - RingScalar::real(sg, sp)));
            tangency.fold(component_norm(Xd * bar(X) + X * bar(Xd)));
            const auto back = embedding_rates_to_chart(X, Xd);
            rates_rt.fold(norm(back.first.v - cp.v));
            rates_rt.fold(norm(back.second - cw));
            const Mat3 g = metric_tensor(cp);
            const Mat3 gi = metric_inverse(cp);
            for (int a = 0; a < 3; ++a) {
                for (int bcol = 0; bcol < 3; ++bcol) {
                    double s = 0.0;
                    for (int k = 0; k < 3; ++k) s += g(a, k) * gi(k, bcol);
                    metric_inv.fold(s - (a == bcol ? 1.0 : 0.0));
                }
            }

            // --- two-body state ---
            const double m1 = rng.range(0.4, 2.4);
            double m2 = rng.range(0.4, 2.4);
            if (std::abs(m1 - m2) < 0.3) m2 += (m2 >= m1 ? 0.4 : -0.4);
            PhaseState st = random_phase_state(rng, sp);
            const TwoBodyConfig cfg = to_config(st, m1, m2);

            const CenterOfMass cm = center_of_mass(cfg);
            const CenterOfMass cm_s = center_of_mass_embedding(cfg);
            cm_route.fold(component_norm(cm.Xc - cm_s.Xc));
            cm_unit.fold(component_norm(norm(cm.Xc) - RingScalar::real(sg, sp)));
            if (sp == Space::Hyperbolic) cm_unit.fold(cm.Xc.s.im > 0.0 ? 0.0 : 1.0);

            const RelativeSet rel = relative_variables(cfg, cm);
            factorization.fold(component_norm(rel.Y12 - rel.Y2 * bar(rel.Y1)));
            tri_rel.fold(component_norm(
                rel.qy - vector_add(pure_vector(st.v2, sp), -1.0 * pure_vector(st.v1, sp))));
            unit_transforms.fold(component_norm(norm(rel.Y12) - RingScalar::one(sp)));
            unit_transforms.fold(component_norm(norm(rel.Y1) - RingScalar::one(sp)));
            unit_transforms.fold(component_norm(norm(rel.Y2) - RingScalar::one(sp)));

            const PerParticleOffsets off = per_particle_offsets(cfg, rel);
            split_rt.fold(component_norm(vector_add(off.qy1, pure_vector(cm.qc.v, sp)) -
                                         pure_vector(st.v1, sp)));
            split_rt.fold(component_norm(vector_add(off.qy2, pure_vector(cm.qc.v, sp)) -
                                         pure_vector(st.v2, sp)));
            split_rt.fold(component_norm(vector_add(off.qy2, -1.0 * off.qy1) - rel.qy));
            const RingScalar qy2dot = dot(rel.qy, rel.qy);
            sep_scale.fold(off.s_val - std::sqrt(1.0 + qy2dot.re));
            sep_scale.fold(qy2dot.im);
            offset_purity.fold(norm(off.qy1.re));
            offset_purity.fold(norm(off.qy2.re));

            const KinematicRates rates = kinematic_rates(cfg, cm);
            const PolarRelative pol = polar_decompose(rel, rates, m1, m2);
            const double ctil = rel.Y12.s.re;
            const double stil = sp == Space::Sphere ? std::sin(pol.r) : std::sinh(pol.r);
            const Biquaternion y_recon =
                Biquaternion::scalar(RingScalar::real(ctil, sp)) +
                Biquaternion::vector(stil * pol.n);
            polar_recon.fold(component_norm(y_recon - rel.Y12));
            const double cdot = (sp == Space::Sphere ? -stil : stil) * pol.rdot;
            const Biquaternion yd_recon =
                Biquaternion::scalar(RingScalar::real(cdot, sp)) +
                Biquaternion::vector(stil * pol.ndot + (ctil * pol.rdot) * pol.n);
            polar_recon.fold(component_norm(yd_recon - rates.Y12_dot));
            axis_norm.fold(pol.axis_norm_residual);

            // Finite-difference check of the analytic kinematic rates.
            {
                const double h = 1e-6;
                PhaseState plus = st, minus = st;
                plus.v1 = st.v1 + h * st.w1;
                plus.v2 = st.v2 + h * st.w2;
                minus.v1 = st.v1 - h * st.w1;
                minus.v2 = st.v2 - h * st.w2;
                const TwoBodyConfig cp_ = to_config(plus, m1, m2);
                const TwoBodyConfig cm_ = to_config(minus, m1, m2);
                const CenterOfMass cmp = center_of_mass(cp_);
                const CenterOfMass cmm = center_of_mass(cm_);
                const RelativeSet rp = relative_variables(cp_, cmp);
                const RelativeSet rm = relative_variables(cm_, cmm);
                fd_rates.fold(component_norm((1.0 / (2.0 * h)) * (rp.Y12 - rm.Y12) - rates.Y12_dot));
                const Biquaternion xcp = cmp.Xc;
                const Biquaternion xcm = cmm.Xc;
                fd_rates.fold(component_norm((1.0 / (2.0 * h)) * (xcp - xcm) - rates.Xc_dot));
            }

            // --- isometry covariance ---
            const Isometry iso = random_isometry(rng, sp);
            const TwoBodyConfig cfg_t = transform_config(cfg, iso);
            dist_inv.fold(geodesic_distance(cfg_t.p1, cfg_t.p2) - geodesic_distance(cfg.p1, cfg.p2));
            const CenterOfMass cm_t = center_of_mass(cfg_t);
            const RelativeSet rel_t = relative_variables(cfg_t, cm_t);
            y_cov.fold(component_norm(rel_t.Y12 -
                                      iso.element() * rel.Y12 * bar(iso.element())));
            cm_cov.fold(component_norm(cm_t.Xc - iso.apply(cm.Xc)));

            // --- kinetic-energy chain ---
            const double t_embed = kinetic_embedding(st, m1, m2);
            const double scale = std::max(1.0, std::abs(t_embed));
            PhaseState st_t;
            st_t.space = sp;
            st_t.v1 = cfg_t.p1.v;
            st_t.v2 = cfg_t.p2.v;
            st_t.w1 = cfg_t.v1dot;
            st_t.w2 = cfg_t.v2dot;
            kin_inv.fold((kinetic_embedding(st_t, m1, m2) - t_embed) / scale);

            k_chart.fold((kinetic_chart(st, m1, m2) - t_embed) / scale);
            const CmRelKinetic cmrel = kinetic_cm_rel(st, m1, m2);
            k_cmrel.fold((cmrel.value - t_embed) / scale);
            ns_cmrel.fold(cmrel.nonscalar_residual / scale);
            cross_present = std::max(cross_present, cmrel.cross_magnitude);
            const Y12Kinetic y12k = kinetic_y12(st, m1, m2);
            k_rel.fold((y12k.value - t_embed) / scale);
            ns_rel.fold(y12k.nonscalar_residual / scale);
            rep_rel.fold((y12k.value_as_printed - t_embed) / scale);
            const PolarKinetic polk = kinetic_polar(st, m1, m2);
            k_polar.fold((polk.value_corrected - t_embed) / scale);
            ns_polar.fold(polk.nonscalar_residual / scale);
            rep_polar.fold((polk.value_as_printed - t_embed) / scale);
            rep_variant.fold((kinetic_chart_variant(st, m1, m2) - kinetic_chart(st, m1, m2)) / scale);

            // --- equal-mass stream ---
            const double meq = rng.range(0.4, 2.4);
            const PhaseState st_eq = random_phase_state(rng, sp);
            const double t_eq = kinetic_embedding(st_eq, meq, meq);
            const double scale_eq = std::max(1.0, std::abs(t_eq));
            const EqualMassKinetic eqk = kinetic_equal_mass(st_eq, meq);
            const PolarKinetic pol_eq = kinetic_polar(st_eq, meq, meq);
            k_eq_polar.fold((eqk.value_corrected - pol_eq.value_corrected) / scale_eq);
            k_eq_embed.fold((eqk.value_corrected - t_eq) / scale_eq);
            rep_eq.fold((eqk.value_as_printed - t_eq) / scale_eq);

            // --- dumbbell stream: antipodal equal-mass pair, static center ---
            {
                const double md = rng.range(0.4, 2.4);
                PhaseState db;
                db.space = sp;
                db.v1 = rng.vec3(0.45);
                db.w1 = rng.vec3(0.6);
                db.v2 = -1.0 * db.v1;
                db.w2 = -1.0 * db.w1;
                const TwoBodyConfig dbc = to_config(db, md, md);
                const KinematicRates dbr = kinematic_rates(dbc);
                db_cm.fold(component_norm(dbr.Xc_dot));
                db_cross.fold(kinetic_cm_rel(db, md, md).cross_magnitude);
            }
        }

        std::vector<Row> rows;
        auto below = [&](const char* nm, const Acc& a, double tol) {
            rows.push_back(Row{nm, a.v, RowKind::Below, 0.0, tol});
        };
        auto report = [&](const char* nm, const Acc& a) {
            rows.push_back(Row{nm, a.v, RowKind::Report, 0.0, 0.0});
        };

        below("algebra associativity", assoc, 1e-12);
        below("algebra conjugation laws", conj_laws, 1e-12);
        below("algebra norm multiplicativity", norm_mult, 1e-12);
        below("triangle rule vs lifted product", tri_rule, 1e-12);
        below("embedding round trip", embed_rt, 1e-12);
        below("embedding unit norm", unit_norm, 1e-12);
        below("embedding velocity tangency", tangency, 1e-12);
        below("embedding rates round trip", rates_rt, 1e-10);
        below("metric inverse identity", metric_inv, 1e-12);
        below("cm route equivalence", cm_route, 1e-10);
        below("cm unit norm and sheet", cm_unit, 1e-10);
        below("relative transform factorization", factorization, 1e-10);
        below("relative chart via triangle rule", tri_rel, 1e-10);
        below("transform unit norms", unit_transforms, 1e-10);
        below("per-particle split round trip", split_rt, 1e-10);
        below("separation scale identity", sep_scale, 1e-10);
        report("per-particle offsets imaginary purity", offset_purity);
        below("polar reconstruction", polar_recon, 1e-10);
        below("polar axis normalization", axis_norm, 1e-10);
        below("kinematic rates vs finite differences", fd_rates, 1e-6);
        below("distance isometry invariance", dist_inv, 1e-10);
        below("relative transform covariance", y_cov, 1e-9);
        below("cm covariance", cm_cov, 1e-9);
        below("kinetic isometry invariance", kin_inv, 1e-9);
        below("kinetic: chart vs embedding", k_chart, 1e-12);
        below("kinetic: cm-rel split vs embedding", k_cmrel, 1e-10);
        below("kinetic: cm-rel non-scalar residual", ns_cmrel, 1e-10);
        below("kinetic: relative form vs embedding", k_rel, 1e-9);
        below("kinetic: relative form non-scalar residual", ns_rel, 1e-9);
        below("kinetic: polar corrected vs embedding", k_polar, 1e-9);
        below("kinetic: polar non-scalar residual", ns_polar, 1e-9);
        below("kinetic: equal-mass vs polar", k_eq_polar, 1e-10);
        below("kinetic: equal-mass vs embedding", k_eq_embed, 1e-9);
        below("dumbbell cm stationarity", db_cm, 1e-12);
        below("dumbbell cross-term suppression", db_cross, 1e-12);
        rows.push_back(Row{"generic cross-terms present", cross_present, RowKind::Above, 1e-3, 0.0});
        report("relative form as-printed residual", rep_rel);
        report("polar as-printed residual", rep_polar);
        rows.push_back(Row{"equal-mass as-printed residual", rep_eq.v, RowKind::Report, 0.0, 0.0});
        report("variant chart metric deviation", rep_variant);

        // --- fixed structural checks ---
        rows.push_back(Row{"small-separation residual order",
                           small_separation_order_ratio(sp), RowKind::Range, 80.0, 120.0});
        {
            const PolarCorrections cal =
                calibrate_polar_corrections(sp, mix(opt.seed, 0x5CA1Eull), 60);
            rows.push_back(Row{"polar correction calibration stable",
                               cal == frozen ? 0.0 : 1.0, RowKind::Below, 0.0, 0.5});
        }
        {
            // Free geodesic from the chart origin: v(t) = tan(t) (sphere) or tanh(t).
            PhaseState st0;
            st0.space = sp;
            st0.v1 = Vec3{};
            st0.v2 = Vec3{0.0, 0.4, 0.0};
            st0.w1 = Vec3{1.0, 0.0, 0.0};
            st0.w2 = Vec3{};
            const Trajectory tr = integrate(st0, 1.0, 1.0, PotentialSpec::free(), 1e-3, 1000, 1000);
            double err = std::numeric_limits<double>::infinity();
            if (tr.status == RunStatus::Completed && !tr.samples.empty()) {
                const Vec3 v_end = tr.samples.back().state.v1;
                const double expected = sp == Space::Sphere ? std::tan(1.0) : std::tanh(1.0);
                err = norm(v_end - Vec3{expected, 0.0, 0.0});
            }
            rows.push_back(Row{"free geodesic analytic flow", err, RowKind::Below, 0.0, 1e-9});
        }
        {
            // Free chart trajectories are straight lines through (v0, w0).
            PhaseState st0;
            st0.space = sp;
            st0.v1 = Vec3{0.10, -0.05, 0.20};
            st0.w1 = Vec3{0.40, 0.30, -0.20};
            st0.v2 = Vec3{-0.15, 0.25, 0.05};
            st0.w2 = Vec3{-0.10, 0.20, 0.35};
            const Trajectory tr = integrate(st0, 1.0, 1.5, PotentialSpec::free(), 2e-3, 500, 10);
            Acc straight;
            auto line_dev = [](const Vec3& v, const Vec3& v0, const Vec3& w0) {
                const Vec3 d = v - v0;
                const Vec3 unit = (1.0 / norm(w0)) * w0;
                const Vec3 off = d - dot(d, unit) * unit;
                return norm(off);
            };
            if (tr.status == RunStatus::Completed) {
                for (const auto& s : tr.samples) {
                    straight.fold(line_dev(s.state.v1, st0.v1, st0.w1));
                    straight.fold(line_dev(s.state.v2, st0.v2, st0.w2));
                }
            } else {
                straight.fold(std::numeric_limits<double>::infinity());
            }
            rows.push_back(Row{"free trajectory chart straightness", straight.v, RowKind::Below, 0.0, 1e-8});
        }
        {
            // Analytic potential gradient vs central finite differences.
            Acc grad_fd;
            for (int k = 0; k < 5; ++k) {
                Rng rng(mix(opt.seed, 0x90000000ull + static_cast<std::uint64_t>(si) * 16 + k));
                const ChartPoint p1 = random_chart_point(rng, sp, 0.5);
                ChartPoint p2 = random_chart_point(rng, sp, 0.5);
                if (norm(p1.v - p2.v) < 0.05) p2.v.x += 0.2;
                const PotentialSpec pot = (k % 2 == 0) ? PotentialSpec::coulomb(0.8)
                                                       : PotentialSpec::oscillator(1.3);
                const Vec3 gvec = grad_distance(p1, p2);
                const double dvdr = potential_eval(pot, geodesic_distance(p1, p2), sp).dVdr;
                const double h = 1e-6;
                for (int a = 0; a < 3; ++a) {
                    ChartPoint pp = p1, pm = p1;
                    pp.v[a] += h;
                    pm.v[a] -= h;
                    const double vp = potential_eval(pot, geodesic_distance(pp, p2), sp).V;
                    const double vm = potential_eval(pot, geodesic_distance(pm, p2), sp).V;
                    const double fd = (vp - vm) / (2.0 * h);
                    grad_fd.fold((dvdr * gvec[a] - fd) / std::max(1.0, std::abs(fd)));
                }
            }
            rows.push_back(Row{"force gradient vs finite differences", grad_fd.v, RowKind::Below, 0.0, 1e-6});
        }
        {
            // Closed-form connection vs finite differences of the metric.
            Acc chris;
            for (int k = 0; k < 3; ++k) {
                Rng rng(mix(opt.seed, 0xA0000000ull + static_cast<std::uint64_t>(si) * 16 + k));
                const ChartPoint p = random_chart_point(rng, sp, 0.5);
                const auto gamma = christoffel(p);
                const double h = 1e-5;
                Mat3 dg[3];
                for (int a = 0; a < 3; ++a) {
                    ChartPoint pp = p, pm = p;
                    pp.v[a] += h;
                    pm.v[a] -= h;
                    const Mat3 gp = metric_tensor(pp);
                    const Mat3 gm = metric_tensor(pm);
                    for (int r2 = 0; r2 < 3; ++r2)
                        for (int c2 = 0; c2 < 3; ++c2) dg[a](r2, c2) = (gp(r2, c2) - gm(r2, c2)) / (2.0 * h);
                }
                const Mat3 gi = metric_inverse(p);
                for (int a = 0; a < 3; ++a)
                    for (int b2 = 0; b2 < 3; ++b2)
                        for (int c2 = 0; c2 < 3; ++c2) {
                            double s = 0.0;
                            for (int d2 = 0; d2 < 3; ++d2)
                                s += 0.5 * gi(a, d2) *
                                     (dg[b2](d2, c2) + dg[c2](d2, b2) - dg[d2](b2, c2));
                            chris.fold(gamma[a](b2, c2) - s);
                        }
            }
            rows.push_back(Row{"connection vs metric finite differences", chris.v, RowKind::Below, 0.0, 1e-6});
        }
        {
            // Energy conservation on an attractive circular pair.
            Acc drift;
            double e0 = 0.0;
            bool ok = false;
            try {
                const PhaseState st0 = circular_pair_state(sp, 0.3, 1.0, PotentialSpec::coulomb(1.0));
                const Trajectory tr =
                    integrate(st0, 1.0, 1.0, PotentialSpec::coulomb(1.0), 1e-3, 2000, 100);
                if (tr.status == RunStatus::Completed && !tr.samples.empty()) {
                    e0 = tr.samples.front().energy;
                    ok = true;
                    for (const auto& s : tr.samples) drift.fold((s.energy - e0) / std::max(1.0, std::abs(e0)));
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) drift.fold(std::numeric_limits<double>::infinity());
            rows.push_back(Row{"energy drift on circular pair", drift.v, RowKind::Below, 0.0, 1e-6});
        }

        for (const Row& row : rows) {
            os << format_row(sname, row) << "\n";
            if (!row.passed()) all_pass = false;
        }
    }

    os << "RESULT: " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass;
}

}  // namespace curvebody
