// Acceptance suite: one line per criterion, exit code = number of failures.
//
// Each criterion pins its tolerances and case counts inline; the checks compare
// library results against independently computed references (closed forms,
// composition oracles, finite differences, byte-level CLI contracts).

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "curvebody/io.hpp"
#include "curvebody/verify.hpp"

using namespace curvebody;

namespace {

constexpr Space kSpaces[] = {Space::Sphere, Space::Hyperbolic};

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

TwoBodyConfig random_config(Rng& rng, Space sp) {
    TwoBodyConfig cfg;
    cfg.m1 = rng.range(0.4, 2.4);
    cfg.m2 = rng.range(0.4, 2.4);
    cfg.p1 = random_chart_point(rng, sp, 0.5);
    cfg.p2 = random_chart_point(rng, sp, 0.5);
    cfg.v1dot = rng.vec3(0.5);
    cfg.v2dot = rng.vec3(0.5);
    return cfg;
}

// --- criterion 1: algebra identities -------------------------------------------------

Outcome criterion_algebra() {
    const auto t0 = std::chrono::steady_clock::now();
    const long cases = 100000;
    double worst_assoc = 0.0, worst_conj = 0.0, worst_norm = 0.0;
    for (Space sp : kSpaces) {
        Rng rng(mix(101, sp == Space::Sphere ? 0 : 1));
        for (long i = 0; i < cases; ++i) {
            const Biquaternion x = random_biquaternion(rng, sp);
            const Biquaternion y = random_biquaternion(rng, sp);
            const Biquaternion z = random_biquaternion(rng, sp);
            const double s2 = std::max(1.0, component_norm(x) * component_norm(y));
            const double s3 = std::max(s2, s2 * component_norm(z));
            worst_assoc = std::max(
                worst_assoc, component_norm((x * y) * z - x * (y * z)) / s3);
            worst_conj = std::max(
                worst_conj, component_norm(bar(x * y) - bar(y) * bar(x)) / s2);
            worst_norm = std::max(
                worst_norm,
                component_norm(norm(x * y) - norm(x) * norm(y)) / (s2 * s2));
        }
    }

    // Zero divisors exist exactly when the ring square is +1: (1+u)(1-u) == 0 with
    // both components exactly zero, and 1+u has no inverse.  With square -1 the same
    // element is invertible.
    bool zero_div_ok = true;
    {
        const RingScalar plus{1.0, 1.0, Space::Sphere};
        const RingScalar minus{1.0, -1.0, Space::Sphere};
        const RingScalar prod = plus * minus;
        zero_div_ok = prod.re == 0.0 && prod.im == 0.0 && modulus2(plus) == 0.0;
        try {
            (void)invert(plus);
            zero_div_ok = false;
        } catch (const ZeroDivisor&) {
        }
        const RingScalar hplus{1.0, 1.0, Space::Hyperbolic};
        const RingScalar round = hplus * invert(hplus);
        zero_div_ok = zero_div_ok && std::abs(round.re - 1.0) < 1e-15 &&
                      std::abs(round.im) < 1e-15;
    }

    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = worst_assoc <= 1e-12 && worst_conj <= 1e-12 && worst_norm <= 1e-12 &&
               zero_div_ok && elapsed <= 10.0;
    out.detail = fmt(
        "algebra over %ld cases/space: assoc %.2e, conjugation %.2e, norm-mult %.2e "
        "(tol 1e-12); zero divisors %s; %.2fs (budget 10s)",
        cases, worst_assoc, worst_conj, worst_norm, zero_div_ok ? "exact" : "BROKEN",
        elapsed);
    return out;
}

// --- criterion 2: chart-vector composition -------------------------------------------

Outcome criterion_vector_add() {
    const long cases = 10000;
    double worst = 0.0, worst_collinear = 0.0;
    for (Space sp : kSpaces) {
        Rng rng(mix(102, sp == Space::Sphere ? 0 : 1));
        for (long i = 0; i < cases; ++i) {
            const PairVector qa = random_pair_vector(rng, sp);
            const PairVector qb = random_pair_vector(rng, sp);
            const PairVector composed = transform_chart_vector(
                verify_detail::lift_pair_vector(qa) * verify_detail::lift_pair_vector(qb));
            worst = std::max(worst, component_norm(vector_add(qa, qb) - composed));
        }
        for (long i = 0; i < 1000; ++i) {
            Vec3 e = rng.vec3(1.0);
            if (norm(e) < 1e-6) e = Vec3{1.0, 0.0, 0.0};
            e = e / norm(e);
            const double alpha = rng.range(0.05, 0.6);
            const double beta = rng.range(0.05, 0.6);
            const bool sph = sp == Space::Sphere;
            const auto len = [&](double th) { return sph ? std::tan(th) : std::tanh(th); };
            const PairVector sum = vector_add(pure_vector(len(alpha) * e, sp),
                                              pure_vector(len(beta) * e, sp));
            const double expect = len(alpha + beta);
            worst_collinear =
                std::max(worst_collinear,
                         std::max(norm(sum.im - expect * e), norm(sum.re)) /
                             std::max(1.0, std::abs(expect)));
        }
    }
    Outcome out;
    out.pass = worst <= 1e-12 && worst_collinear <= 1e-13;
    out.detail = fmt(
        "chart-vector addition vs composition oracle %.2e (tol 1e-12, %ld cases/space); "
        "collinear tangent addition %.2e (tol 1e-13)",
        worst, cases, worst_collinear);
    return out;
}

// --- criterion 3: kinematic identities ------------------------------------------------

Outcome criterion_kinematics() {
    const long cases = 1000;
    double worst = 0.0, worst_cov = 0.0;
    for (Space sp : kSpaces) {
        Rng rng(mix(103, sp == Space::Sphere ? 0 : 1));
        for (long i = 0; i < cases; ++i) {
            const TwoBodyConfig cfg = random_config(rng, sp);
            const CenterOfMass cm = center_of_mass(cfg);
            const RelativeSet rel = relative_variables(cfg, cm);
            auto fold = [&](double r) { worst = std::max(worst, r); };

            fold(component_norm(rel.Y12 - rel.Y2 * bar(rel.Y1)));
            fold(component_norm(rel.qy - vector_add(pure_vector(cfg.p2.v, sp),
                                                    -pure_vector(cfg.p1.v, sp))));
            for (const Biquaternion* y : {&rel.Y12, &rel.Y1, &rel.Y2})
                fold(component_norm(norm(*y) - RingScalar::one(sp)));
            fold(component_norm(norm(cm.Xc) - RingScalar::real(sigma(sp), sp)));
            fold(component_norm(cm.Xc - center_of_mass_embedding(cfg).Xc));

            const PerParticleOffsets off = per_particle_offsets(cfg, rel);
            const PairVector qc = pure_vector(cm.qc.v, sp);
            fold(component_norm(vector_add(off.qy1, qc) - pure_vector(cfg.p1.v, sp)));
            fold(component_norm(vector_add(off.qy2, qc) - pure_vector(cfg.p2.v, sp)));
            fold(component_norm(vector_add(off.qy2, -off.qy1) - rel.qy));

            // Covariance: the CM of the moved configuration is the moved CM.
            const Isometry iso = random_isometry(rng, sp);
            const CenterOfMass cm_moved = center_of_mass(transform_config(cfg, iso));
            worst_cov = std::max(worst_cov,
                                 component_norm(cm_moved.Xc - iso.apply(cm.Xc)));
        }
    }
    Outcome out;
    out.pass = worst <= 1e-10 && worst_cov <= 1e-9;
    out.detail = fmt(
        "kinematic identities (factorization, triangle, unit norms, CM routes, "
        "offset round trip) %.2e (tol 1e-10, %ld cases/space); CM isometry covariance "
        "%.2e (tol 1e-9)",
        worst, cases, worst_cov);
    return out;
}

// --- criterion 4: kinetic-energy forms ------------------------------------------------

Outcome criterion_kinetic_forms() {
    const long cases = 1000;
    double worst_chart = 0.0, worst_cmrel = 0.0, worst_forms = 0.0;
    double worst_dumbbell = 0.0, best_cross = 0.0;
    bool flags_ok = true;
    for (Space sp : kSpaces) {
        Rng rng(mix(104, sp == Space::Sphere ? 0 : 1));
        for (long i = 0; i < cases; ++i) {
            const PhaseState st = random_phase_state(rng, sp);
            const double m1 = rng.range(0.4, 2.4), m2 = rng.range(0.4, 2.4);
            const double te = kinetic_embedding(st, m1, m2);
            const double scale = std::max(1.0, std::abs(te));

            worst_chart =
                std::max(worst_chart, std::abs(kinetic_chart(st, m1, m2) - te) / scale);
            const CmRelKinetic cm = kinetic_cm_rel(st, m1, m2);
            worst_cmrel = std::max(worst_cmrel, std::abs(cm.value - te) / scale);
            best_cross = std::max(best_cross, cm.cross_magnitude);

            const Y12Kinetic y = kinetic_y12(st, m1, m2);
            worst_forms = std::max(worst_forms, std::abs(y.value - te) / scale);
            const PolarKinetic p = kinetic_polar(st, m1, m2);
            worst_forms = std::max(worst_forms, std::abs(p.value_corrected - te) / scale);
            flags_ok = flags_ok && p.correction_flags == frozen_polar_corrections();

            const double tme = kinetic_embedding(st, m1, m1);
            const EqualMassKinetic eq = kinetic_equal_mass(st, m1);
            worst_forms = std::max(worst_forms, std::abs(eq.value_corrected - tme) /
                                                    std::max(1.0, std::abs(tme)));
        }
        for (long i = 0; i < 100; ++i) {
            PhaseState st = random_phase_state(rng, sp);
            st.v2 = -1.0 * st.v1;
            st.w2 = -1.0 * st.w1;
            const double m = rng.range(0.4, 2.4);
            worst_dumbbell =
                std::max(worst_dumbbell, kinetic_cm_rel(st, m, m).cross_magnitude);
        }
    }
    Outcome out;
    out.pass = worst_chart <= 1e-12 && worst_cmrel <= 1e-10 && worst_forms <= 1e-9 &&
               flags_ok && worst_dumbbell <= 1e-12 && best_cross > 1e-3;
    out.detail = fmt(
        "kinetic forms over %ld cases/space: chart %.2e (tol 1e-12), cm/rel %.2e "
        "(tol 1e-10), corrected relative/polar/equal %.2e (tol 1e-9, frozen flags %s); "
        "dumbbell coupling %.2e (tol 1e-12), generic coupling up to %.1e (> 1e-3)",
        cases, worst_chart, worst_cmrel, worst_forms, flags_ok ? "held" : "CHANGED",
        worst_dumbbell, best_cross);
    return out;
}

// --- criterion 5: small-separation scaling --------------------------------------------

Outcome criterion_small_separation() {
    const double rs = small_separation_order_ratio(Space::Sphere);
    const double rh = small_separation_order_ratio(Space::Hyperbolic);
    Outcome out;
    out.pass = rs >= 80.0 && rs <= 120.0 && rh >= 80.0 && rh <= 120.0;
    out.detail = fmt(
        "small-separation truncation residual ratio for r = 1e-2 vs 1e-3: "
        "sphere %.4g, hyperbolic %.4g (window [80, 120])",
        rs, rh);
    return out;
}

// --- criterion 6: integrator ----------------------------------------------------------

Outcome criterion_integrator() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_geo = 0.0;
    for (Space sp : kSpaces) {
        PhaseState launch;
        launch.space = sp;
        launch.w1 = Vec3{1.0, 0.0, 0.0};
        launch.v2 = Vec3{0.0, 0.4, 0.0};
        const Trajectory tr =
            integrate(launch, 1.0, 1.0, PotentialSpec::free(), 1e-3, 1000, 1000);
        if (tr.status != RunStatus::Completed) {
            return {false, "free geodesic run did not complete"};
        }
        const double target = sp == Space::Sphere ? std::tan(1.0) : std::tanh(1.0);
        worst_geo = std::max(worst_geo, std::abs(tr.samples.back().state.v1.x - target));
    }

    // Fourth-order convergence: the endpoint error ratio for dt = 0.02 vs 0.01.
    double ratio = 0.0;
    {
        PhaseState launch;
        launch.space = Space::Sphere;
        launch.w1 = Vec3{1.0, 0.0, 0.0};
        launch.v2 = Vec3{0.0, 0.4, 0.0};
        auto err = [&](double dt, long steps) {
            const Trajectory tr =
                integrate(launch, 1.0, 1.0, PotentialSpec::free(), dt, steps, steps);
            return std::abs(tr.samples.back().state.v1.x - std::tan(1.0));
        };
        ratio = err(0.02, 50) / err(0.01, 100);
    }

    // Energy drift of a bound coulomb pair over 1e4 steps.
    double worst_drift = 0.0;
    for (Space sp : kSpaces) {
        const PhaseState st = circular_pair_state(sp, 0.3, 1.0, PotentialSpec::coulomb(1.0));
        const Trajectory tr =
            integrate(st, 1.0, 1.0, PotentialSpec::coulomb(1.0), 1e-3, 10000, 100);
        if (tr.status != RunStatus::Completed) {
            return {false, "circular coulomb pair did not complete"};
        }
        const double e0 = tr.samples.front().energy;
        for (const TrajectorySample& s : tr.samples)
            worst_drift = std::max(worst_drift, std::abs(s.energy - e0));
    }

    // Free trajectories stay on straight chart lines.
    double worst_line = 0.0;
    for (Space sp : kSpaces) {
        PhaseState st;
        st.space = sp;
        st.v1 = Vec3{0.1, -0.05, 0.2};
        st.w1 = Vec3{0.4, 0.3, -0.1};
        st.v2 = Vec3{-0.2, 0.1, 0.0};
        st.w2 = Vec3{0.1, -0.2, 0.3};
        const Trajectory tr =
            integrate(st, 1.0, 1.0, PotentialSpec::free(), 2e-3, 500, 1);
        if (tr.status != RunStatus::Completed) return {false, "line run did not complete"};
        for (int body = 0; body < 2; ++body) {
            const Vec3 p0 = body == 0 ? tr.samples.front().state.v1
                                      : tr.samples.front().state.v2;
            const Vec3 p1 = body == 0 ? tr.samples.back().state.v1
                                      : tr.samples.back().state.v2;
            const Vec3 d = (p1 - p0) / norm(p1 - p0);
            for (const TrajectorySample& s : tr.samples) {
                const Vec3 rel = (body == 0 ? s.state.v1 : s.state.v2) - p0;
                const Vec3 perp = rel - dot(rel, d) * d;
                worst_line = std::max(worst_line, norm(perp));
            }
        }
    }

    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = worst_geo <= 1e-9 && ratio >= 12.0 && ratio <= 20.0 &&
               worst_drift <= 1e-6 && worst_line <= 1e-8 && elapsed <= 60.0;
    out.detail = fmt(
        "geodesic endpoint %.2e (tol 1e-9); step-halving error ratio %.3g "
        "(window [12, 20]); coulomb energy drift %.2e per 1e4 steps (tol 1e-6); "
        "chart-line deviation %.2e (tol 1e-8); %.2fs (budget 60s)",
        worst_geo, ratio, worst_drift, worst_line, elapsed);
    return out;
}

// --- criterion 7: CLI contract ---------------------------------------------------------

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string g_scratch;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult run_cli(const std::string& args, const std::string& tag) {
    const std::string path = g_scratch + "/" + tag;
    const std::string cmd =
        std::string(CURVEBODY_BIN) + " " + args + " >" + path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(path)};
}

Outcome criterion_cli() {
    {
        std::string tmpl = "/tmp/curvebody_acceptance_XXXXXX";
        char* made = mkdtemp(tmpl.data());
        if (!made) return {false, "could not create scratch directory"};
        g_scratch = made;
    }

    const CliResult v1 = run_cli("verify --cases 1000", "verify1.txt");
    const CliResult v2 = run_cli("verify --cases 1000", "verify2.txt");
    const bool verify_ok = v1.exit_code == 0 && v2.exit_code == 0 && v1.out == v2.out;

    // Simulate: the CSV must re-serialize byte-identically from its parsed values,
    // and the JSONL stream must carry exactly the same numbers.
    const std::string cfg_path = g_scratch + "/config.toml";
    {
        std::ofstream cfg(cfg_path);
        cfg << "space = \"hyperbolic\"\n"
               "m1 = 1.0\n"
               "m2 = 2.0\n"
               "q1 = [0.1, 0.2, 0]\n"
               "q2 = [-0.2, 0.1, 0.1]\n"
               "q1dot = [0.3, 0, 0.1]\n"
               "q2dot = [0, -0.2, 0.2]\n"
               "potential = \"oscillator\"\n"
               "omega = 1.1\n"
               "dt = 0.001\n"
               "steps = 200\n"
               "output_every = 10\n";
    }
    const std::string csv_path = g_scratch + "/traj.csv";
    const std::string jsonl_path = g_scratch + "/traj.jsonl";
    const CliResult sim_csv = run_cli(
        "simulate --config " + cfg_path + " --out " + csv_path, "sim_csv.txt");
    const CliResult sim_jsonl = run_cli(
        "simulate --config " + cfg_path + " --out " + jsonl_path + " --format jsonl",
        "sim_jsonl.txt");
    if (sim_csv.exit_code != 0 || sim_jsonl.exit_code != 0) {
        return {false, fmt("simulate exits: csv %d, jsonl %d (expected 0)",
                           sim_csv.exit_code, sim_jsonl.exit_code)};
    }

    const std::string csv_bytes = slurp(csv_path);
    std::vector<TrajectoryRecord> recs;
    try {
        std::istringstream is(csv_bytes);
        recs = read_csv(is);
    } catch (const Error& e) {
        return {false, fmt("CSV re-parse failed: %s", e.what())};
    }
    std::ostringstream rebuilt;
    rebuilt << kCsvHeader << '\n';
    for (const TrajectoryRecord& rec : recs) {
        for (int i = 0; i < kRecordFields; ++i) {
            if (i) rebuilt << ',';
            rebuilt << format_double(rec.f[i]);
        }
        rebuilt << '\n';
    }
    const bool csv_roundtrip = rebuilt.str() == csv_bytes && recs.size() == 21;

    bool jsonl_ok = true;
    {
        std::istringstream is(slurp(jsonl_path));
        std::string line;
        std::size_t idx = 0;
        while (std::getline(is, line)) {
            if (idx >= recs.size()) {
                jsonl_ok = false;
                break;
            }
            const nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
            if (obj.is_discarded() || obj.size() != std::size_t(kRecordFields)) {
                jsonl_ok = false;
                break;
            }
            for (int i = 0; i < kRecordFields; ++i) {
                const char* name = record_field_names()[i];
                if (!obj.contains(name) || obj.at(name).get<double>() != recs[idx].f[i])
                    jsonl_ok = false;
            }
            ++idx;
        }
        jsonl_ok = jsonl_ok && idx == recs.size();
    }

    Outcome out;
    out.pass = verify_ok && csv_roundtrip && jsonl_ok;
    out.detail = fmt(
        "verify --cases 1000 exits %d/%d with %s output; CSV round trip %s "
        "(%zu records); JSONL/CSV value parity %s",
        v1.exit_code, v2.exit_code, v1.out == v2.out ? "byte-identical" : "DIFFERING",
        csv_roundtrip ? "byte-exact" : "BROKEN", recs.size(),
        jsonl_ok ? "exact" : "BROKEN");
    return out;
}

}  // namespace

int main() {
    int failures = 0;
    const struct {
        const char* name;
        Outcome (*fn)();
    } criteria[] = {
        {"1", criterion_algebra},        {"2", criterion_vector_add},
        {"3", criterion_kinematics},     {"4", criterion_kinetic_forms},
        {"5", criterion_small_separation}, {"6", criterion_integrator},
        {"7", criterion_cli},
    };
    for (const auto& c : criteria) {
        Outcome res;
        try {
            res = c.fn();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = fmt("unexpected exception: %s", e.what());
        }
        std::printf("ACCEPTANCE %s: %s - %s\n", c.name, res.pass ? "PASS" : "FAIL",
                    res.detail.c_str());
        if (!res.pass) ++failures;
    }
    return failures;
}
