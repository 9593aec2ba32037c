// Command-line driver for the experiment harness.
//
//   bmofem run --config study.json [--kind stability] [--levels 2..6] ...
//   bmofem mesh --level 3 --out mesh.txt
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bmofem/errors.hpp"
#include "bmofem/harness/config.hpp"
#include "bmofem/harness/report.hpp"
#include "bmofem/harness/studies.hpp"
#include "bmofem/mesh.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Overrides {
    std::optional<std::string> kind;
    std::optional<double> p;
    std::optional<double> p_hat;
    std::optional<std::string> levels;
    std::optional<std::string> coeff;
    std::optional<double> beta;
    std::optional<double> kappa;
    std::optional<std::string> rhs;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> solver_tol;
    std::optional<int> workers;
};

bmofem::harness::ExperimentConfig build_config(const std::string& path, const Overrides& o) {
    using namespace bmofem::harness;
    ExperimentConfig c = path.empty() ? ExperimentConfig{} : load_config(path);
    if (o.kind) c.kind = parse_study_kind(*o.kind);
    if (o.p) c.p = *o.p;
    if (o.p_hat) c.p_hat = *o.p_hat;
    if (o.levels) std::tie(c.level_min, c.level_max) = parse_level_range(*o.levels);
    if (o.coeff) c.coeff = *o.coeff;
    if (o.beta) c.beta = *o.beta;
    if (o.kappa) c.kappa = *o.kappa;
    if (o.rhs) c.rhs = *o.rhs;
    if (o.out) c.out = *o.out;
    if (o.seed) c.seed = *o.seed;
    if (o.solver_tol) c.solver_tol = *o.solver_tol;
    if (o.workers) c.workers = *o.workers;
    c.validate();
    if (c.out.empty()) {
        throw bmofem::ConfigError("no output path: set \"out\" in the config or pass --out");
    }
    return c;
}

int run(const std::string& config_path, const Overrides& overrides) {
    using namespace bmofem::harness;
    const ExperimentConfig config = build_config(config_path, overrides);
    const StudyReport report = run_study(config);
    write_report(report, config.out);
    std::cout << "wrote " << config.out << " (" << report.rows.size() << " rows, "
              << report.elapsed_seconds << " s)\n";
    for (const auto& [key, value] : report.summary) {
        std::cout << "  " << key << " = " << format_value(value) << '\n';
    }
    return 0;
}

int export_mesh(int level, const std::string& out_path) {
    const bmofem::Mesh mesh = bmofem::build_uniform_mesh(level);
    if (out_path.empty() || out_path == "-") {
        bmofem::write_mesh(std::cout, mesh);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw bmofem::IoError("cannot write '" + out_path + "'");
    }
    bmofem::write_mesh(out, mesh);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite element experiments for elliptic problems with BMO coefficients"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;
    auto* run_cmd = app.add_subcommand("run", "Run a study and write its CSV report");
    run_cmd->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    run_cmd->add_option("--kind", o.kind,
                        "stability | convergence | hodge-suite | coeff-decay | bmo-diagnostics");
    run_cmd->add_option("--p", o.p, "Integrability exponent p");
    run_cmd->add_option("--p-hat", o.p_hat, "Exponent of the convergence error norm");
    run_cmd->add_option("--levels", o.levels, "Level range a..b");
    run_cmd->add_option("--coeff", o.coeff, "identity | scaled-identity | smooth | log-singular | checkerboard | grid");
    run_cmd->add_option("--beta", o.beta, "Amplitude of the log-singular coefficient");
    run_cmd->add_option("--kappa", o.kappa, "Checkerboard contrast or scaled-identity factor");
    run_cmd->add_option("--rhs", o.rhs, "sincos | grad-sinsin | grad-hat | unit-x");
    run_cmd->add_option("--out", o.out, "Output CSV path");
    run_cmd->add_option("--seed", o.seed, "Seed of random-field suites");
    run_cmd->add_option("--solver-tol", o.solver_tol, "CG relative residual tolerance");
    run_cmd->add_option("--workers", o.workers, "Levels solved concurrently");

    int level = 0;
    std::string mesh_out;
    auto* mesh_cmd = app.add_subcommand("mesh", "Export a uniform mesh in the debug text format");
    mesh_cmd->add_option("--level", level, "Refinement level")->required();
    mesh_cmd->add_option("--out", mesh_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) {
            return run(config_path, o);
        }
        return export_mesh(level, mesh_out);
    } catch (const bmofem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bmofem::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const bmofem::BoundsError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bmofem::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
