#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "curvebody/dynamics.hpp"

namespace curvebody {

// Closed-form Christoffel symbols of the pullback metric:
//   Gamma^a_bc = -sigma*(v_b*delta^a_c + v_c*delta^a_b)/lambda.
// Returned as one matrix per upper index a: G[a](b,c).
inline std::array<Mat3, 3> christoffel(const ChartPoint& p) {
    validate_chart_point(p);
    const double f = -sigma(p.space) / p.lambda();
    std::array<Mat3, 3> g{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                g[a](b, c) = f * (p.v[b] * (a == c ? 1.0 : 0.0) +
                                  p.v[c] * (a == b ? 1.0 : 0.0));
    return g;
}

// Geodesic acceleration -Gamma^a_bc w^b w^c, which collapses to a multiple of w:
// straight chart lines are geodesics in this chart.
inline Vec3 geodesic_acceleration(const ChartPoint& p, Vec3 w) {
    return (2.0 * sigma(p.space) * dot(p.v, w) / p.lambda()) * w;
}

// Gradient of r with respect to the first argument's chart position, where
// c = (1 + sigma*(v1.v2))/sqrt(lambda1*lambda2) and r = arccos(c) / arccosh(c).
inline Vec3 grad_distance(const ChartPoint& p1, const ChartPoint& p2) {
    const double sg = sigma(p1.space);
    const double l1 = p1.lambda(), l2 = p2.lambda();
    const double root = std::sqrt(l1 * l2);
    const double c = (1.0 + sg * dot(p1.v, p2.v)) / root;
    const Vec3 dc = sg * ((1.0 / root) * p2.v - (c / l1) * p1.v);
    if (p1.space == Space::Sphere) {
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        if (s < 1e-12) throw NumericalDomain("grad_distance: separation 0 or pi");
        return (-1.0 / s) * dc;
    }
    const double s = std::sqrt(std::max(0.0, c * c - 1.0));
    if (s < 1e-12) throw NumericalDomain("grad_distance: coincident points");
    return (1.0 / s) * dc;
}

// Chart accelerations of both particles:
//   a_i = -Gamma(v_i)(w_i, w_i) - (1/m_i) * g^{-1}(v_i) * dV/dr * grad_i r.
inline std::pair<Vec3, Vec3> eom_rhs(const PhaseState& st, double m1, double m2,
                                     const PotentialSpec& pot) {
    const ChartPoint p1{st.v1, st.space}, p2{st.v2, st.space};
    Vec3 a1 = geodesic_acceleration(p1, st.w1);
    Vec3 a2 = geodesic_acceleration(p2, st.w2);
    if (pot.kind != PotentialSpec::Kind::Free) {
        const double r = geodesic_distance(p1, p2);
        const double dVdr = potential_eval(pot, r, st.space).dVdr;
        if (dVdr != 0.0) {
            a1 -= (dVdr / m1) * metric_inverse(p1).apply(grad_distance(p1, p2));
            a2 -= (dVdr / m2) * metric_inverse(p2).apply(grad_distance(p2, p1));
        }
    }
    return {a1, a2};
}

struct TrajectorySample {
    double t = 0.0;
    PhaseState state;
    double kinetic = 0.0;
    double potential = 0.0;
    double energy = 0.0;
};

enum class RunStatus { Completed, ChartExit, Singularity };

inline const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::ChartExit: return "chart_exit";
        case RunStatus::Singularity: return "singularity";
    }
    return "unknown";
}

struct Trajectory {
    std::vector<TrajectorySample> samples;
    RunStatus status = RunStatus::Completed;
    std::string message;
};

namespace detail {

inline bool inside_guard(const PhaseState& st) {
    const double limit = st.space == Space::Hyperbolic
                             ? 1.0 - 1e-9
                             : std::tan(1.5707963267948966 - 1e-6);
    return norm(st.v1) <= limit && norm(st.v2) <= limit &&
           std::isfinite(st.v1.x + st.v1.y + st.v1.z + st.v2.x + st.v2.y + st.v2.z +
                         st.w1.x + st.w1.y + st.w1.z + st.w2.x + st.w2.y + st.w2.z);
}

inline TrajectorySample make_sample(double t, const PhaseState& st, double m1,
                                    double m2, const PotentialSpec& pot) {
    const double kin = kinetic_chart(st, m1, m2);
    double potv = 0.0;
    if (pot.kind != PotentialSpec::Kind::Free) {
        const double r =
            geodesic_distance({st.v1, st.space}, {st.v2, st.space});
        potv = potential_eval(pot, r, st.space).V;
    }
    return {t, st, kin, potv, kin + potv};
}

}  // namespace detail

// Fixed-step classic Runge-Kutta on (v1, v2, w1, w2). Samples are recorded at t = 0,
// every record_every-th step, and at the last valid step. Early termination is
// reported through the status, never thrown: ChartExit when a position leaves the
// chart guard, Singularity when the potential blows up (collision).
inline Trajectory integrate(const PhaseState& state0, double m1, double m2,
                            const PotentialSpec& pot, double dt, long steps,
                            long record_every = 1) {
    if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
    if (steps < 1) throw ValidationError("steps", "must be at least 1");
    if (record_every < 1) throw ValidationError("output_every", "must be at least 1");

    Trajectory out;
    PhaseState st = state0;
    if (!detail::inside_guard(st)) {
        out.status = RunStatus::ChartExit;
        out.message = "initial state outside the chart guard";
        return out;
    }

    auto rhs = [&](const PhaseState& s) -> std::array<Vec3, 4> {
        const auto [a1, a2] = eom_rhs(s, m1, m2, pot);
        return {s.w1, s.w2, a1, a2};
    };
    auto advance = [&](const PhaseState& s, double h,
                       const std::array<Vec3, 4>& k) -> PhaseState {
        return {s.v1 + h * k[0], s.v2 + h * k[1], s.w1 + h * k[2], s.w2 + h * k[3],
                s.space};
    };

    out.samples.push_back(detail::make_sample(0.0, st, m1, m2, pot));
    long valid_step = 0;     // step index of st
    long recorded_step = 0;  // step index of the newest sample

    for (long i = 0; i < steps; ++i) {
        PhaseState next;
        try {
            const auto k1 = rhs(st);
            const auto k2 = rhs(advance(st, 0.5 * dt, k1));
            const auto k3 = rhs(advance(st, 0.5 * dt, k2));
            const auto k4 = rhs(advance(st, dt, k3));
            next = st;
            for (int c = 0; c < 3; ++c) {
                next.v1[c] += dt / 6.0 * (k1[0][c] + 2 * k2[0][c] + 2 * k3[0][c] + k4[0][c]);
                next.v2[c] += dt / 6.0 * (k1[1][c] + 2 * k2[1][c] + 2 * k3[1][c] + k4[1][c]);
                next.w1[c] += dt / 6.0 * (k1[2][c] + 2 * k2[2][c] + 2 * k3[2][c] + k4[2][c]);
                next.w2[c] += dt / 6.0 * (k1[3][c] + 2 * k2[3][c] + 2 * k3[3][c] + k4[3][c]);
            }
        } catch (const PotentialSingularity& e) {
            out.status = RunStatus::Singularity;
            out.message = e.what();
            break;
        } catch (const Error& e) {
            out.status = RunStatus::ChartExit;
            out.message = e.what();
            break;
        }
        if (!detail::inside_guard(next)) {
            out.status = RunStatus::ChartExit;
            out.message = "position left the chart guard";
            break;
        }
        st = next;
        valid_step = i + 1;
        if (valid_step % record_every == 0 || valid_step == steps) {
            try {
                out.samples.push_back(detail::make_sample(valid_step * dt, st, m1, m2, pot));
                recorded_step = valid_step;
            } catch (const PotentialSingularity& e) {
                out.status = RunStatus::Singularity;
                out.message = e.what();
                break;
            } catch (const Error& e) {
                out.status = RunStatus::ChartExit;
                out.message = e.what();
                break;
            }
        }
    }

    // Flush the last valid state if the thinning skipped it (and it is evaluable).
    if (valid_step != recorded_step) {
        try {
            out.samples.push_back(detail::make_sample(valid_step * dt, st, m1, m2, pot));
        } catch (const Error&) {
        }
    }
    return out;
}

}  // namespace curvebody
