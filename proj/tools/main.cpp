// Batch verification driver: composes the library checks into named suites,
// emits machine-readable reports and plot data, and returns a pass/fail
// exit status (0 pass, 1 check failure, 2 usage error).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hypercone/suite.hpp"

namespace {

using hypercone::suite::FlowRun;
using hypercone::suite::Report;
using hypercone::suite::SuiteConfig;

void add_common_flags(CLI::App* cmd, SuiteConfig& cfg, std::string& config_path,
                      std::vector<double>& t_range, std::vector<std::string>& tol_overrides) {
    cmd->add_option("--config", config_path, "key=value config file; flags win");
    cmd->add_option("--surface", cfg.surface,
                    "helicoid | totally-geodesic | euclidean-helicoid | complex-curve | "
                    "sphere-patch | perturbed");
    cmd->add_option("--inclusion", cfg.inclusion,
                    "equidistant | horosphere | geodesic-sphere | totally-geodesic");
    cmd->add_option("--a", cfg.a, "surface parameter a");
    cmd->add_option("--b", cfg.b, "surface parameter b");
    cmd->add_option("--d", cfg.d, "equidistant distance");
    cmd->add_option("--rho", cfg.rho, "geodesic sphere radius");
    cmd->add_option("--eps", cfg.eps, "perturbation size for the negative-control surface");
    cmd->add_option("--n", cfg.n, "ambient hyperbolic dimension");
    cmd->add_option("--nu", cfg.nu, "fiber dimension (inclusion codimension)");
    cmd->add_option("--grid", cfg.grid, "grid resolution per axis");
    cmd->add_option("--t-range", t_range, "fiber coordinate range: lo hi")->expected(2);
    cmd->add_option("--tol-override", tol_overrides, "per-check tolerance override, name=value");
    cmd->add_option("--seed", cfg.seed, "sample seed; identical seeds give identical reports");
    cmd->add_option("--out", cfg.out_dir, "output directory for report files");
    cmd->add_option("--format", cfg.format, "human | json-lines | csv");
}

SuiteConfig resolve_config(const CLI::App* cmd, SuiteConfig flag_values,
                           const std::string& config_path, const std::vector<double>& t_range,
                           const std::vector<std::string>& tol_overrides) {
    SuiteConfig cfg = flag_values;
    if (!config_path.empty()) {
        // Config file provides the base; explicitly passed flags win.
        SuiteConfig base = hypercone::suite::parse_config_file(config_path);
        base.suite = cfg.suite;
        auto keep = [&](const std::string& flag, auto member) {
            if (cmd->count(flag) > 0) base.*member = cfg.*member;
        };
        keep("--surface", &SuiteConfig::surface);
        keep("--inclusion", &SuiteConfig::inclusion);
        keep("--a", &SuiteConfig::a);
        keep("--b", &SuiteConfig::b);
        keep("--d", &SuiteConfig::d);
        keep("--rho", &SuiteConfig::rho);
        keep("--eps", &SuiteConfig::eps);
        keep("--n", &SuiteConfig::n);
        keep("--nu", &SuiteConfig::nu);
        keep("--grid", &SuiteConfig::grid);
        keep("--seed", &SuiteConfig::seed);
        keep("--out", &SuiteConfig::out_dir);
        keep("--format", &SuiteConfig::format);
        cfg = base;
    }
    if (!t_range.empty()) {
        cfg.t_min = t_range[0];
        cfg.t_max = t_range[1];
    }
    for (const auto& kv : tol_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw hypercone::DomainError("--tol-override needs name=value, got '" + kv + "'");
        cfg.tol_override[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suites for generalized cones in hyperbolic space"};
    app.require_subcommand(1);

    // verify <suite>
    SuiteConfig vcfg;
    std::string vconfig_path;
    std::vector<double> vt_range;
    std::vector<std::string> vtols;
    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", vcfg.suite,
                       "cone-geometry | splitting | gauss | flow | boundary-cases | all")
        ->required();
    add_common_flags(verify, vcfg, vconfig_path, vt_range, vtols);

    // flow
    double u0 = 0.0, v0 = 0.0, step = 1e-3;
    std::vector<double> ft_range = {-3.0, 3.0};
    std::string flow_out;
    CLI::App* flow = app.add_subcommand("flow", "export a leaf trajectory as CSV");
    flow->add_option("--u0", u0, "initial u");
    flow->add_option("--v0", v0, "initial v");
    flow->add_option("--t-range", ft_range, "leaf time range: lo hi")->expected(2);
    flow->add_option("--step", step, "integrator step");
    flow->add_option("--out", flow_out, "CSV path (stdout when omitted)");

    // sweep <quantity>
    SuiteConfig scfg;
    std::string sconfig_path, sweep_quantity;
    std::vector<double> st_range;
    std::vector<std::string> stols;
    CLI::App* sweep = app.add_subcommand("sweep", "sweep a quantity along the fiber");
    sweep->add_option("quantity", sweep_quantity, "scalar-curvature")->required();
    add_common_flags(sweep, scfg, sconfig_path, st_range, stols);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            const SuiteConfig cfg = resolve_config(verify, vcfg, vconfig_path, vt_range, vtols);
            const Report report = hypercone::suite::run_suite(cfg);
            if (cfg.format == "json-lines" && cfg.out_dir.empty())
                std::cout << hypercone::suite::report_json_lines(report);
            else if (cfg.format == "csv" && cfg.out_dir.empty())
                std::cout << hypercone::suite::report_csv(report);
            else
                hypercone::suite::emit_report_human(report, std::cout);
            for (const auto& path : hypercone::suite::write_report_files(report))
                std::cerr << "wrote " << path << "\n";
            return report.all_pass() ? 0 : 1;
        }
        if (flow->parsed()) {
            const FlowRun run =
                hypercone::suite::flow_trajectory(u0, v0, ft_range[0], ft_range[1], step);
            if (run.blow_up)
                std::cerr << "blow-up in finite leaf time; pole at t = " << run.pole_t << "\n";
            if (flow_out.empty()) {
                std::cout << run.csv;
            } else {
                std::ofstream out(flow_out, std::ios::binary);
                if (!out) throw hypercone::DomainError("cannot write '" + flow_out + "'");
                out << run.csv;
                std::cerr << "wrote " << flow_out << "\n";
            }
            return 0;
        }
        if (sweep->parsed()) {
            if (sweep_quantity != "scalar-curvature")
                throw hypercone::DomainError("unknown sweep quantity '" + sweep_quantity + "'");
            const SuiteConfig cfg = resolve_config(sweep, scfg, sconfig_path, st_range, stols);
            const auto run = hypercone::suite::sweep_scalar_curvature(cfg);
            if (cfg.out_dir.empty()) {
                std::cout << run.csv;
            } else {
                std::filesystem::create_directories(cfg.out_dir);
                const std::string path = cfg.out_dir + "/sweep_scalar_curvature.csv";
                std::ofstream out(path, std::ios::binary);
                if (!out) throw hypercone::DomainError("cannot write '" + path + "'");
                out << run.csv;
                std::cerr << "wrote " << path << "\n";
            }
            std::cerr << "fitted exponent of |s - s_flat| along the fiber: " << run.fitted_slope
                      << "\n";
            return 0;
        }
    } catch (const hypercone::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
