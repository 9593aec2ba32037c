#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bmofem::harness {

enum class StudyKind { stability, convergence, hodge_suite, coeff_decay, bmo_diagnostics };

std::string to_string(StudyKind kind);
StudyKind parse_study_kind(const std::string& name);

/// One experiment. JSON keys match the member names; unknown keys are
/// rejected.
struct ExperimentConfig {
    StudyKind kind = StudyKind::stability;

    // Coefficient fixture: identity | scaled-identity | smooth | log-singular | checkerboard | grid.
    std::string coeff = "identity";
    double beta = 0.5;
    double kappa = 5.0;
    std::vector<double> x0 = {0.0, 0.0};
    std::string coeff_file;

    // Right-hand side fixture: sincos | grad-sinsin | grad-hat | unit-x.
    std::string rhs = "sincos";

    double p = 2.0;
    double p_hat = 2.0;
    int level_min = 2;
    int level_max = 5;
    /// Reference level of convergence studies; -1 means level_max + 2.
    int ref_level = -1;
    /// Exponent of the coefficient-decay norm.
    double r = 2.0;

    double quad_tol = 1e-6;
    double solver_tol = 1e-12;

    std::uint64_t seed = 20240917;
    int workers = 1;
    /// Random fields per level in the Hodge suite.
    int samples = 50;

    // BMO diagnostics: scalar is log | indicator | constant | coeff-a11 | wave.
    std::string scalar = "log";
    int depth = 6;
    std::vector<double> lambdas = {1.0, 2.0, 3.0, 4.0};
    int jn_depth = 10;
    int grid_points = 17;

    std::string out;

    int effective_ref_level() const { return ref_level >= 0 ? ref_level : level_max + 2; }

    /// Throws ConfigError on out-of-range or inconsistent fields.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses a JSON object; throws ConfigError on malformed input or unknown keys.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON echo (pretty-printed, sorted keys).
std::string dump_config(const ExperimentConfig& config);

/// Parses `a..b` (or a single level `a`).
std::pair<int, int> parse_level_range(const std::string& text);

}  // namespace bmofem::harness
