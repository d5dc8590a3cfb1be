#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hypercone/cone.hpp"

namespace hypercone::suite {

inline constexpr const char* kVersion = "hypercone 0.1.0";

// Batch configuration. Flags override config-file values; the defaults are
// the desk-scale setting (helicoid over an equidistant H^3 in H^4).
struct SuiteConfig {
    std::string suite = "all";
    std::string surface = "helicoid";
    std::string inclusion = "equidistant";
    double a = 1.0;
    double b = 1.0;
    double d = 0.7;
    double rho = 1.0;
    double eps = 0.1;
    int n = 4;
    int nu = 1;
    int grid = 16;
    double t_min = -2.0;
    double t_max = 2.0;
    std::map<std::string, double> tol_override;
    std::uint64_t seed = 12345;
    std::string out_dir;
    std::string format = "human";
};

// One verified identity. pass means residual <= tolerance, except for
// expected-failure records (negative controls) which pass when the checked
// quantity exceeds the tolerance as it must.
struct CheckRecord {
    std::string name;
    std::string ref;  // label of the identity this record verifies
    double residual = 0.0;
    double tolerance = 0.0;
    int samples = 0;
    bool expected_fail = false;
    std::string status;  // pass | fail | xfail-pass | skip
    std::string note;
};

struct Report {
    std::string version = kVersion;
    SuiteConfig config;
    std::vector<CheckRecord> checks;

    int failures() const;
    bool all_pass() const { return failures() == 0; }
};

// Plain-text key=value config parsing; unknown keys are an error.
SuiteConfig parse_config_file(const std::string& path);
void apply_config_line(SuiteConfig& cfg, const std::string& key, const std::string& value);

// Runs one of the named suites: cone-geometry, splitting, gauss, flow,
// boundary-cases, all.
Report run_suite(const SuiteConfig& config);

// Serializations. Identical inputs produce byte-identical output.
std::string report_json_lines(const Report& report);
std::string report_csv(const Report& report);
void emit_report_human(const Report& report, std::ostream& os);

// Writes the report in the configured format under out_dir; returns the
// paths written. Throws DomainError when the directory cannot be written.
std::vector<std::string> write_report_files(const Report& report);

// Leaf trajectory export: CSV columns t,u,v,psi,theta. Real starts with
// |v0| > 1 blow up in finite leaf time; the result carries the label and
// pole location.
struct FlowRun {
    std::string csv;
    bool blow_up = false;
    double pole_t = 0.0;
};
FlowRun flow_trajectory(double u0, double v0, double t_min, double t_max, double step);

// Scalar-curvature sweep along the fiber at a seeded surface point: CSV of
// (t, s) plus the fitted slope of log|s + m(m-1)| against t.
struct SweepRun {
    std::string csv;
    double fitted_slope = 0.0;
};
SweepRun sweep_scalar_curvature(const SuiteConfig& config);

// The cone described by a configuration (also used by the CLI).
cone::ConeSpec cone_from_config(const SuiteConfig& config);

}  // namespace hypercone::suite
