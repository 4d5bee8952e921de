// curvebody: two-body kinematics and dynamics on constant-curvature 3-spaces.
//
// Subcommands:
//   simulate  --config <path> --out <path> [--format csv|jsonl]
//   verify    [--cases N] [--seed S] [--space sphere|hyperbolic]
//   distance  --space <sphere|hyperbolic> --q1 x,y,z --q2 x,y,z
//   audit     --config <path>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "curvebody/config.hpp"
#include "curvebody/io.hpp"
#include "curvebody/verify.hpp"

namespace {

using namespace curvebody;

bool parse_triple_arg(const std::string& text, Vec3& out) {
    char tail = 0;
    const int got = std::sscanf(text.c_str(), " %lf , %lf , %lf %c", &out.x, &out.y, &out.z, &tail);
    return got == 3;
}

bool parse_space_arg(const std::string& text, Space& out) {
    if (text == "sphere") {
        out = Space::Sphere;
        return true;
    }
    if (text == "hyperbolic") {
        out = Space::Hyperbolic;
        return true;
    }
    return false;
}

int load_config(const std::string& path, SimConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open config file: " << path << "\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        cfg = parse_sim_config(text.str());
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& format) {
    SimConfig cfg;
    if (int rc = load_config(config_path, cfg); rc != 0) return rc;

    Trajectory traj;
    try {
        traj = integrate(cfg.initial_state(), cfg.m1, cfg.m2, cfg.potential, cfg.dt, cfg.steps,
                         cfg.output_every);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 1;
    }
    if (format == "jsonl") {
        write_jsonl(out, traj, cfg.m1, cfg.m2);
    } else {
        write_csv(out, traj, cfg.m1, cfg.m2);
    }
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing output file: " << out_path << "\n";
        return 1;
    }

    if (traj.status != RunStatus::Completed) {
        std::cerr << "status: " << run_status_name(traj.status) << ": " << traj.message << "\n";
        return 2;
    }
    return 0;
}

int run_verify_cmd(long cases, std::uint64_t seed, const std::string& space_str) {
    if (cases < 1) {
        std::cerr << "error: --cases must be a positive integer\n";
        return 1;
    }
    VerifyOptions opt;
    opt.cases = cases;
    opt.seed = seed;
    opt.space_filter = 0;
    if (!space_str.empty()) {
        Space sp;
        if (!parse_space_arg(space_str, sp)) {
            std::cerr << "error: --space must be sphere or hyperbolic\n";
            return 1;
        }
        opt.space_filter = sp == Space::Sphere ? +1 : -1;
    }
    try {
        return run_verify(opt, std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

int run_distance(const std::string& space_str, const std::string& q1_str,
                 const std::string& q2_str) {
    Space sp;
    if (!parse_space_arg(space_str, sp)) {
        std::cerr << "error: --space must be sphere or hyperbolic\n";
        return 1;
    }
    Vec3 a, b;
    if (!parse_triple_arg(q1_str, a) || !parse_triple_arg(q2_str, b)) {
        std::cerr << "error: --q1/--q2 expect comma-separated triples x,y,z\n";
        return 1;
    }
    try {
        const ChartPoint p1{a, sp};
        const ChartPoint p2{b, sp};
        validate_chart_point(p1);
        validate_chart_point(p2);
        const double r = geodesic_distance(p1, p2);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", r);
        std::cout << buf << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void print_entry(std::ostream& os, const char* label, const FormulaEntry& e) {
    char buf[64];
    os << "  " << label;
    if (e.value.has_value()) {
        std::snprintf(buf, sizeof buf, "%.12g", *e.value);
        os << buf;
    } else {
        os << "error: " << e.error;
    }
    os << "\n";
}

void print_residual(std::ostream& os, const char* label, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    os << "  " << label << buf << "\n";
}

int run_audit(const std::string& config_path) {
    SimConfig cfg;
    if (int rc = load_config(config_path, cfg); rc != 0) return rc;

    KineticReport rep;
    try {
        rep = audit(cfg.initial_state(), cfg.m1, cfg.m2);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::ostream& os = std::cout;
    os << "kinetic-energy audit (initial state)\n";
    os << "space: " << space_name(cfg.space) << "\n";
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "masses: m1=%.12g m2=%.12g", cfg.m1, cfg.m2);
        os << buf << "\n";
    }
    os << "kinetic-energy evaluations:\n";
    print_entry(os, "embedding          = ", rep.embedding);
    print_entry(os, "chart metric       = ", rep.chart);
    print_entry(os, "cm/relative split  = ", rep.cm_rel);
    print_entry(os, "relative corrected = ", rep.relative_form);
    print_entry(os, "relative printed   = ", rep.relative_printed);
    print_entry(os, "polar corrected    = ", rep.polar_corrected);
    print_entry(os, "polar printed      = ", rep.polar_printed);
    if (rep.equal_mass_case) {
        print_entry(os, "equal-mass corr.   = ", rep.equal_corrected);
        print_entry(os, "equal-mass printed = ", rep.equal_printed);
    }
    print_entry(os, "small-sep lead 2T  = ", rep.small_sep);
    os << "residuals:\n";
    print_residual(os, "cm/relative non-scalar  = ", rep.cm_rel_nonscalar);
    print_residual(os, "relative non-scalar     = ", rep.relative_nonscalar);
    print_residual(os, "polar non-scalar        = ", rep.polar_nonscalar);
    print_residual(os, "coupling cross-term     = ", rep.cross_magnitude);
    print_residual(os, "variant metric deviation= ", rep.metric_variant_residual);
    if (rep.small_matched_residual.has_value()) {
        print_residual(os, "small-sep matched resid = ", *rep.small_matched_residual);
    }
    {
        const PolarCorrections& pc = rep.correction_flags;
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "correction flags: cm term %+d; coupling bracket signs (%+d,%+d,%+d,%+d)",
                      pc.xc_sign, pc.bracket_signs[0], pc.bracket_signs[1], pc.bracket_signs[2],
                      pc.bracket_signs[3]);
        os << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-body kinematics and dynamics on constant-curvature 3-spaces"};
    app.require_subcommand(1);

    std::string sim_config, sim_out, sim_format = "csv";
    CLI::App* sim = app.add_subcommand("simulate", "Integrate a configuration and write the trajectory");
    sim->add_option("--config", sim_config, "Path to key = value configuration file")->required();
    sim->add_option("--out", sim_out, "Output file path")->required();
    sim->add_option("--format", sim_format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    long ver_cases = 1000;
    std::uint64_t ver_seed = 0;
    std::string ver_space;
    CLI::App* ver = app.add_subcommand("verify", "Run the randomized invariant suite");
    ver->add_option("--cases", ver_cases, "Random cases per space");
    ver->add_option("--seed", ver_seed, "Master seed");
    ver->add_option("--space", ver_space, "Restrict to one space")
        ->check(CLI::IsMember({"sphere", "hyperbolic"}));

    std::string dist_space, dist_q1, dist_q2;
    CLI::App* dist = app.add_subcommand("distance", "Geodesic distance between two chart points");
    dist->add_option("--space", dist_space, "sphere or hyperbolic")->required();
    dist->add_option("--q1", dist_q1, "First point as x,y,z")->required();
    dist->add_option("--q2", dist_q2, "Second point as x,y,z")->required();

    std::string audit_config;
    CLI::App* aud = app.add_subcommand("audit", "Kinetic-energy form comparison for a configuration");
    aud->add_option("--config", audit_config, "Path to key = value configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed()) return run_simulate(sim_config, sim_out, sim_format);
    if (ver->parsed()) return run_verify_cmd(ver_cases, ver_seed, ver_space);
    if (dist->parsed()) return run_distance(dist_space, dist_q1, dist_q2);
    if (aud->parsed()) return run_audit(audit_config);
    return 1;
}
