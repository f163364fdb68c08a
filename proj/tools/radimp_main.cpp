// Command-line front end: frequency sweeps, spectral-vs-bruteforce cross
// checks, and velocity-profile comparisons. CSV/JSON output is formatted
// with 12 significant digits so downstream diffs are tolerance-free.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "radimp/impedance.hpp"
#include "radimp/oracle.hpp"
#include "radimp/profiles.hpp"

namespace {

using radimp::RadiatorKind;
using radimp::RadiatorSpec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

RadiatorSpec make_spec(const std::string& kind, double aspect) {
    if (kind == "rect2d") return RadiatorSpec::rect2d(1.0, aspect);
    if (kind == "rect1d") return RadiatorSpec::rect1d(1.0, aspect);
    if (kind == "circ") return RadiatorSpec::circular(1.0);
    throw CLI::ValidationError("--kind", "must be one of rect2d|rect1d|circ");
}

const char* validity_flag(const radimp::NormalizedImpedance& p) {
    return p.reactance_validated ? "ok" : "reactance-unvalidated";
}

std::string curve_to_csv(const radimp::ImpedanceCurve& curve) {
    std::string out = "ka,r,x,converged,validity_flag\n";
    for (const auto& p : curve.points) {
        out += fmt12(p.ka) + ',' + fmt12(p.r) + ',' + fmt12(p.x) + ',' +
               (p.converged ? "true" : "false") + ',' + validity_flag(p) + '\n';
    }
    return out;
}

std::string curve_to_json(const radimp::ImpedanceCurve& curve, const std::string& kind,
                          double aspect) {
    nlohmann::ordered_json doc;
    doc["kind"] = kind;
    doc["aspect"] = aspect;
    doc["normalization"] =
        curve.points.empty() || curve.points.front().normalization == radimp::Normalization::By4abRhoC
            ? "4ab_rho_c"
            : "pi_a2_rho_c";
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : curve.points) {
        pts.push_back({{"ka", p.ka},
                       {"r", p.r},
                       {"x", p.x},
                       {"converged", p.converged},
                       {"validity_flag", validity_flag(p)}});
    }
    doc["points"] = std::move(pts);
    return doc.dump(2) + "\n";
}

int write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitUsage;
    }
    out << payload;
    if (!out) {
        std::cerr << "error: failed writing output file: " << path << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

struct SweepArgs {
    std::string kind = "rect2d";
    double aspect = 1.0;
    radimp::SweepSpec sweep;
    std::string spacing = "linear";
    std::string format = "csv";
    std::string out = "-";
    int jobs = 0;  // all cores
};

int run_sweep(const SweepArgs& args) {
    RadiatorSpec spec = make_spec(args.kind, args.aspect);
    radimp::SweepSpec sweep_spec = args.sweep;
    sweep_spec.spacing = args.spacing == "log" ? radimp::Spacing::Log : radimp::Spacing::Linear;
    sweep_spec.output_format =
        args.format == "json" ? radimp::OutputFormat::Json : radimp::OutputFormat::Csv;
    sweep_spec.validate();

    const radimp::ImpedanceCurve curve = radimp::sweep(spec, sweep_spec, args.jobs);
    const std::string payload = sweep_spec.output_format == radimp::OutputFormat::Json
                                    ? curve_to_json(curve, args.kind, args.aspect)
                                    : curve_to_csv(curve);
    const int rc = write_output(args.out, payload);
    if (rc != kExitOk) return rc;
    for (const auto& p : curve.points) {
        if (!p.converged) return kExitNotConverged;
    }
    return kExitOk;
}

struct OracleArgs {
    std::string kind = "rect2d";
    double aspect = 1.0;
    double ka = 1.0;
    int mesh_n = 64;
    double max_rel = 0.02;
    double tol_rel = 1e-6;
    bool piston = false;
    int jobs = 0;
    std::size_t mesh_cap = radimp::kDefaultMaxPanels;
};

int run_oracle_check(const OracleArgs& args) {
    const radimp::MediumParams medium;
    if (args.piston) {
        // Uniform-velocity disk against the classical small-ka baffled
        // piston resistance (ka)^2/2.
        RadiatorSpec spec = RadiatorSpec::circular(1.0);
        radimp::PanelMesh mesh = radimp::build_mesh(spec, args.mesh_n, args.mesh_cap);
        for (double& v : mesh.velocity) v = 1.0;
        mesh.vrms_ratio_sq = 1.0;
        const auto z = radimp::bruteforce_impedance(mesh, args.ka, medium, args.jobs);
        const double baseline = 0.5 * args.ka * args.ka;
        const double rel = std::fabs(z.r - baseline) / baseline;
        std::printf("piston self-test at ka = %s (mesh %d)\n", fmt12(args.ka).c_str(), args.mesh_n);
        std::printf("  bruteforce r = %s\n", fmt12(z.r).c_str());
        std::printf("  (ka)^2/2     = %s\n", fmt12(baseline).c_str());
        std::printf("  rel diff     = %.3e  (limit %.3e)\n", rel, args.max_rel);
        const bool pass = rel <= args.max_rel;
        std::printf("%s\n", pass ? "PASS" : "FAIL");
        return pass ? kExitOk : kExitNotConverged;
    }

    RadiatorSpec spec = make_spec(args.kind, args.aspect);
    radimp::Tolerance tol;
    tol.rel = args.tol_rel;
    const auto spectral = radimp::impedance(spec, args.ka, tol);
    const radimp::PanelMesh mesh = radimp::build_mesh(spec, args.mesh_n, args.mesh_cap);
    const auto oracle = radimp::bruteforce_impedance(mesh, args.ka, medium, args.jobs);

    const double dr = std::fabs(spectral.r - oracle.r) / std::fabs(oracle.r);
    const double dx = std::fabs(spectral.x - oracle.x) / std::fabs(oracle.x);
    std::printf("%s aspect %s at ka = %s (mesh %d, %zu panels)\n", args.kind.c_str(),
                fmt12(args.aspect).c_str(), fmt12(args.ka).c_str(), args.mesh_n, mesh.size());
    std::printf("  spectral  r = %-18s x = %s\n", fmt12(spectral.r).c_str(),
                fmt12(spectral.x).c_str());
    std::printf("  bruteforce r = %-17s x = %s\n", fmt12(oracle.r).c_str(),
                fmt12(oracle.x).c_str());
    std::printf("  rel diff  r = %.3e  x = %.3e  (limit %.3e)\n", dr, dx, args.max_rel);
    const bool pass = dr <= args.max_rel && dx <= args.max_rel;
    std::printf("%s\n", pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitNotConverged;
}

struct CompareArgs {
    std::string grid_path;
    std::string kind = "rect2d";
    double aspect = 1.0;
    bool mirror = false;
};

int run_compare_profile(const CompareArgs& args) {
    radimp::SampledGrid grid = radimp::load_grid(args.grid_path);
    if (args.mirror) grid = radimp::mirror_quadrant(grid);

    // Geometry is taken from the grid extents and checked against --aspect.
    const double a = std::max(std::fabs(grid.xs.front()), std::fabs(grid.xs.back()));
    const double b = std::max(std::fabs(grid.ys.front()), std::fabs(grid.ys.back()));
    RadiatorSpec spec;
    if (args.kind == "circ") {
        spec = RadiatorSpec::circular(std::max(a, b));
    } else {
        const double grid_aspect = b / a;
        if (std::fabs(grid_aspect / args.aspect - 1.0) > 0.02) {
            std::cerr << "error: grid aspect " << grid_aspect << " does not match --aspect "
                      << args.aspect << "\n";
            return kExitUsage;
        }
        spec = args.kind == "rect1d" ? RadiatorSpec::rect1d(a, b) : RadiatorSpec::rect2d(a, b);
    }
    const radimp::ProfileModel model(spec);
    const double value = radimp::are(grid, model);

    double peak = 0.0;
    for (double v : grid.values) peak = std::max(peak, std::fabs(v));
    std::printf("grid: %zu x %zu nodes, x in [%s, %s], y in [%s, %s], peak |v| = %s\n",
                grid.xs.size(), grid.ys.size(), fmt12(grid.xs.front()).c_str(),
                fmt12(grid.xs.back()).c_str(), fmt12(grid.ys.front()).c_str(),
                fmt12(grid.ys.back()).c_str(), fmt12(peak).c_str());
    std::printf("model: %s, aspect %s\n", args.kind.c_str(), fmt12(spec.aspect()).c_str());
    std::printf("ARE %.2f%%\n", 100.0 * value);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radiation impedance of clamped rectangular, 1D and circular radiators"};
    app.require_subcommand(1);
    // Flat key=value lines under a [subcommand] section; explicit flags win.
    app.set_config("--config", "", "configuration file (key=value under [subcommand])");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "impedance curve over a ka grid");
    sweep->add_option("--kind", sweep_args.kind, "rect2d|rect1d|circ")
        ->check(CLI::IsMember({"rect2d", "rect1d", "circ"}));
    sweep->add_option("--aspect", sweep_args.aspect, "aspect ratio b/a (rect kinds)");
    sweep->add_option("--ka-min", sweep_args.sweep.ka_min, "lowest ka")->required();
    sweep->add_option("--ka-max", sweep_args.sweep.ka_max, "highest ka")->required();
    sweep->add_option("--points", sweep_args.sweep.n_points, "number of grid points")->required();
    sweep->add_option("--spacing", sweep_args.spacing, "linear|log")
        ->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--tol-rel", sweep_args.sweep.tol.rel, "relative tolerance (default 1e-6)");
    sweep->add_option("--tol-abs", sweep_args.sweep.tol.abs, "absolute tolerance (default 1e-9)");
    sweep->add_option("--format", sweep_args.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_args.out, "output file ('-' for stdout)");
    sweep->add_option("--jobs", sweep_args.jobs, "worker threads (0 = all cores)");
    sweep->add_option("--max-subdiv", sweep_args.sweep.tol.max_subdivisions,
                      "adaptive subdivision budget per integral (default 2000)");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle-check", "spectral vs brute-force Rayleigh sum");
    oracle->add_option("--kind", oracle_args.kind, "rect2d|rect1d|circ")
        ->check(CLI::IsMember({"rect2d", "rect1d", "circ"}));
    oracle->add_option("--aspect", oracle_args.aspect, "aspect ratio b/a");
    oracle->add_option("--ka", oracle_args.ka, "dimensionless frequency")->required();
    oracle->add_option("--mesh-n", oracle_args.mesh_n, "panels across the width (default 64)");
    oracle->add_option("--max-rel", oracle_args.max_rel, "pass threshold (default 0.02)");
    oracle->add_option("--tol-rel", oracle_args.tol_rel, "spectral relative tolerance");
    oracle->add_option("--mesh-cap", oracle_args.mesh_cap, "panel budget");
    oracle->add_option("--jobs", oracle_args.jobs, "threads for the double sum (0 = all cores)");
    oracle->add_flag("--piston", oracle_args.piston,
                     "uniform-velocity disk against the (ka)^2/2 baseline");

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare-profile", "ARE of a sampled grid vs the model");
    compare->add_option("--grid", compare_args.grid_path, "CSV file with header x,y,v")->required();
    compare->add_option("--kind", compare_args.kind, "rect2d|rect1d|circ")
        ->check(CLI::IsMember({"rect2d", "rect1d", "circ"}));
    compare->add_option("--aspect", compare_args.aspect, "aspect ratio b/a");
    compare->add_flag("--mirror", compare_args.mirror,
                      "complete a quarter-symmetry export by even reflection");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (oracle->parsed()) return run_oracle_check(oracle_args);
        if (compare->parsed()) return run_compare_profile(compare_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
