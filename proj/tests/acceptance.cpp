// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bmofem/bvp.hpp"
#include "bmofem/coeff.hpp"
#include "bmofem/fem.hpp"
#include "bmofem/hodge.hpp"
#include "bmofem/mesh.hpp"
#include "bmofem/harness/config.hpp"
#include "bmofem/harness/report.hpp"
#include "bmofem/harness/studies.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace bmofem;
using namespace bmofem::harness;

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what, double value) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s=%.3g", detail.empty() ? "" : ", ", what.c_str(), value);
        detail += buf;
        if (!ok) {
            pass = false;
            detail += " (!)";
        }
    }
};

ExperimentConfig study(StudyKind kind, int lo, int hi) {
    ExperimentConfig c;
    c.kind = kind;
    c.level_min = lo;
    c.level_max = hi;
    return c;
}

double max_over_min(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo;
}

double sinsin(const Point& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); }

Vec2 grad_sinsin(const Point& x) {
    return Vec2(pi * std::cos(pi * x.x()) * std::sin(pi * x.y()),
                pi * std::sin(pi * x.x()) * std::cos(pi * x.y()));
}

Outcome galerkin_exactness() {
    Outcome out;
    auto mesh = make_uniform_mesh(3);
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const P1Function w = testing::random_p1(mesh, rng);
        const P1Function u = solve_projected(project_coefficient(identity_coefficient(), mesh, 1e-6),
                                             gradient(w));
        worst = std::max(worst, (u.values() - w.values()).cwiseAbs().maxCoeff());
    }
    out.check(worst <= 1e-10, "max_vertex_error", worst);
    return out;
}

Outcome hodge_suite() {
    Outcome out;
    const auto report = run_study(study(StudyKind::hodge_suite, 1, 4));
    const auto& s = report.summary;
    out.check(s.at("max_reconstruction") <= 1e-10, "reconstruction", s.at("max_reconstruction"));
    out.check(s.at("max_orthogonality") <= 1e-9, "orthogonality", s.at("max_orthogonality"));
    out.check(s.at("max_idempotence") <= 1e-9, "idempotence", s.at("max_idempotence"));
    out.check(s.at("max_pythagoras") <= 1e-9, "pythagoras", s.at("max_pythagoras"));
    return out;
}

Outcome conjugate_corollary() {
    Outcome out;
    std::mt19937_64 rng(3);
    double worst_p2 = 0.0;
    for (int level = 1; level <= 4; ++level) {
        auto mesh = make_uniform_mesh(level);
        for (int trial = 0; trial < 50; ++trial) {
            worst_p2 = std::max(worst_p2, conjugate_gap(testing::random_p1(mesh, rng), 2.0).g_norm);
        }
    }
    out.check(worst_p2 <= 1e-10, "p2_g_norm", worst_p2);

    // Fixed u: the interpolant of sin(pi x) sin(pi y). Monotonicity is checked
    // on each side of 2, since |p - 2| ties 1.9 with 2.1 and 1.8 with 2.2.
    const std::vector<double> ps = {1.8, 1.9, 2.1, 2.2};
    bool monotone = true;
    double worst_spread = 0.0;
    std::vector<std::vector<double>> ratios(ps.size());
    for (int level = 1; level <= 4; ++level) {
        const P1Function u = P1Function::interpolate(make_uniform_mesh(level), sinsin, true);
        std::vector<double> g;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const ConjugateGap gap = conjugate_gap(u, ps[i]);
            g.push_back(gap.g_norm);
            ratios[i].push_back(gap.bound_ratio);
        }
        monotone = monotone && g[0] > g[1] && g[3] > g[2];
    }
    for (const auto& r : ratios) {
        worst_spread = std::max(worst_spread, max_over_min(r));
    }
    out.check(monotone, "monotone_in_abs_p_minus_2", monotone ? 1.0 : 0.0);
    out.check(worst_spread <= 2.0, "bound_ratio_max_over_min", worst_spread);
    return out;
}

Outcome flux_corollary() {
    Outcome out;
    std::mt19937_64 rng(4);
    double worst_ell = 0.0;
    for (int level = 1; level <= 4; ++level) {
        auto mesh = make_uniform_mesh(level);
        const auto identity = project_coefficient(identity_coefficient(), mesh, 1e-6);
        for (int trial = 0; trial < 10; ++trial) {
            const FluxSplit split = flux_decompose(testing::random_p1(mesh, rng), identity, 2.0);
            worst_ell = std::max(worst_ell, max_difference(split.ell, PCVectorField::zero(mesh)));
        }
    }
    out.check(worst_ell <= 1e-10, "identity_ell", worst_ell);
    auto c = study(StudyKind::stability, 2, 5);
    c.coeff = "checkerboard";
    c.kappa = 5.0;
    const double spread = run_study(c).summary.at("flux_ratio_max_over_min");
    out.check(spread <= 2.0, "checkerboard_bound_ratio_max_over_min", spread);
    return out;
}

Outcome coercivity_transfer() {
    Outcome out;
    oracle::TempDir dir;
    const auto grid_path = dir / "grid.csv";
    {
        std::ofstream grid(grid_path);
        grid << "# alpha=0.5\nx,y,a11,a12,a22\n";
        for (double y : {0.0, 0.5, 1.0}) {
            for (double x : {0.0, 0.25, 1.0}) {
                grid << x << ',' << y << ',' << 1.0 + x << ',' << 0.3 * y << ',' << 1.0 + y * y << '\n';
            }
        }
    }
    std::vector<std::pair<std::string, CoefficientField>> fixtures = {
        {"identity", identity_coefficient()},
        {"scaled-identity", constant_coefficient(0.25 * Mat2::Identity())},
        {"smooth", smooth_coefficient()},
        {"log-singular-corner", log_singular_coefficient(0.5, Point(0.0, 0.0))},
        {"log-singular-interior", log_singular_coefficient(2.0, Point(0.3, 0.6))},
        {"log-singular-midcell", log_singular_coefficient(0.5, Point(0.3, 0.3))},
        {"checkerboard-5", checkerboard_coefficient(5.0)},
        {"checkerboard-0.2", checkerboard_coefficient(0.2)},
        {"grid", load_sampled_coefficient(grid_path.string())}};
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string worst_name;
    for (const auto& [name, coeff] : fixtures) {
        for (int level = 0; level <= 5; ++level) {
            const double margin =
                coercivity_of_projection(project_coefficient(coeff, make_uniform_mesh(level), 1e-6)) -
                coeff.alpha;
            if (margin < worst_margin) {
                worst_margin = margin;
                worst_name = name;
            }
        }
    }
    out.check(worst_margin >= -1e-8, "min_margin[" + worst_name + "]", worst_margin);
    return out;
}

Outcome coefficient_decay() {
    Outcome out;
    auto smooth = study(StudyKind::coeff_decay, 2, 5);
    smooth.coeff = "smooth";
    double worst_order_gap = 0.0;
    for (const ReportRow& row : run_study(smooth).rows) {
        if (row.order) {
            worst_order_gap = std::max(worst_order_gap, std::abs(*row.order - 1.0));
        }
    }
    out.check(worst_order_gap <= 0.15, "smooth_order_deviation", worst_order_gap);
    auto log = study(StudyKind::coeff_decay, 1, 5);
    log.coeff = "log-singular";
    const auto rows = run_study(log).rows;
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        worst_ratio = std::max(worst_ratio, *rows[i].coeff_err_l2 / *rows[i - 1].coeff_err_l2);
    }
    out.check(worst_ratio < 1.0, "log_max_consecutive_ratio", worst_ratio);
    return out;
}

Outcome a_priori_stability() {
    Outcome out;
    auto c = study(StudyKind::stability, 2, 6);
    c.coeff = "log-singular";
    c.beta = 0.5;
    c.p = 2.1;
    c.rhs = "sincos";
    const double spread = run_study(c).summary.at("stability_ratio_max_over_min");
    out.check(spread <= 1.5, "stability_ratio_max_over_min", spread);
    return out;
}

Outcome strong_convergence() {
    Outcome out;
    auto checker = study(StudyKind::convergence, 2, 5);
    checker.coeff = "checkerboard";
    checker.kappa = 100.0;
    checker.ref_level = 7;
    auto log = study(StudyKind::convergence, 2, 5);
    log.coeff = "log-singular";
    log.beta = 0.5;
    log.p = 2.1;
    log.p_hat = 2.0;
    log.ref_level = 7;
    for (const auto& [name, c] : {std::pair{"checkerboard", checker}, std::pair{"log", log}}) {
        const auto rows = run_study(c).rows;
        double worst = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            worst = std::max(worst, *rows[i].err_phat / *rows[i - 1].err_phat);
        }
        out.check(worst <= 0.9, std::string(name) + "_max_error_ratio", worst);
    }
    return out;
}

Outcome classical_rate() {
    Outcome out;
    std::vector<double> errors;
    for (int level = 3; level <= 5; ++level) {
        auto mesh = make_uniform_mesh(level);
        const P1Function u = solve_bvp(mesh, identity_coefficient(), grad_sinsin);
        errors.push_back(lp_distance(grad_sinsin, gradient(u), 2.0, 1e-8));
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        worst = std::max(worst, std::abs(std::log2(errors[i - 1] / errors[i]) - 1.0));
    }
    out.check(worst <= 0.15, "h1_order_deviation", worst);
    return out;
}

Outcome maximal_bound() {
    Outcome out;
    double violations = 0.0;
    for (const std::string scalar : {"log", "indicator", "constant", "coeff-a11", "wave"}) {
        auto c = study(StudyKind::bmo_diagnostics, 2, 4);
        c.scalar = scalar;
        c.coeff = "log-singular";
        c.x0 = {0.5, 0.5};
        c.depth = 2;
        c.jn_depth = 4;
        violations += run_study(c).summary.at("maximal_bound_violations");
    }
    out.check(violations == 0.0, "violations", violations);
    return out;
}

Outcome bmo_diagnostics() {
    Outcome out;
    auto c = study(StudyKind::bmo_diagnostics, 2, 2);
    c.scalar = "log";
    c.depth = 6;
    const auto report = run_study(c);
    const double increment = report.summary.at("bmo_last_increment_relative");
    out.check(increment <= 0.10, "depth6_relative_increment", increment);
    const auto& jn = report.table("john_nirenberg").rows;
    bool monotone = true;
    std::vector<double> slopes;
    for (std::size_t i = 1; i < jn.size(); ++i) {
        const double prev = *jn[i - 1][1];
        const double cur = *jn[i][1];
        monotone = monotone && cur < prev && cur > 0.0;
        slopes.push_back((std::log(prev) - std::log(cur)) / (*jn[i][0] - *jn[i - 1][0]));
    }
    out.check(monotone, "jn_monotone", monotone ? 1.0 : 0.0);
    const double spread = monotone ? max_over_min(slopes) : std::nan("");
    out.check(spread <= 3.0, "jn_slope_max_over_min", spread);
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

Outcome determinism() {
    Outcome out;
    oracle::TempDir dir;
    std::vector<ExperimentConfig> configs;
    auto stability = study(StudyKind::stability, 1, 4);
    stability.coeff = "log-singular";
    stability.p = 2.2;
    configs.push_back(stability);
    auto convergence = study(StudyKind::convergence, 1, 3);
    convergence.coeff = "checkerboard";
    configs.push_back(convergence);
    auto hodge = study(StudyKind::hodge_suite, 1, 3);
    hodge.samples = 5;
    configs.push_back(hodge);
    auto decay = study(StudyKind::coeff_decay, 0, 4);
    decay.coeff = "log-singular";
    configs.push_back(decay);
    auto bmo = study(StudyKind::bmo_diagnostics, 1, 2);
    bmo.depth = 3;
    bmo.jn_depth = 6;
    configs.push_back(bmo);

    int mismatches = 0;
    int index = 0;
    for (ExperimentConfig c : configs) {
        for (int workers : {1, 2}) {
            c.workers = workers;
            const std::string a = (dir / ("a" + std::to_string(index) + ".csv")).string();
            const std::string b = (dir / ("b" + std::to_string(index) + ".csv")).string();
            ++index;
            const auto first = run_study(c);
            write_report(first, a);
            write_report(run_study(c), b);
            mismatches += slurp(a) != slurp(b);
            for (const ReportTable& t : first.tables) {
                mismatches += slurp(table_path(a, t.name)) != slurp(table_path(b, t.name));
            }
        }
    }
    out.check(mismatches == 0, "csv_mismatches", mismatches);
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"galerkin-exactness", galerkin_exactness},
        {"hodge-suite", hodge_suite},
        {"conjugate-corollary", conjugate_corollary},
        {"flux-corollary", flux_corollary},
        {"coercivity-transfer", coercivity_transfer},
        {"coefficient-decay", coefficient_decay},
        {"a-priori-stability", a_priori_stability},
        {"strong-convergence", strong_convergence},
        {"classical-rate", classical_rate},
        {"maximal-function-bound", maximal_bound},
        {"bmo-diagnostics", bmo_diagnostics},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
