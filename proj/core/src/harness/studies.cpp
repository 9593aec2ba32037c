#include "bmofem/harness/studies.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "bmofem/assembly.hpp"
#include "bmofem/bvp.hpp"
#include "bmofem/coeff.hpp"
#include "bmofem/errors.hpp"
#include "bmofem/harness/fixtures.hpp"
#include "bmofem/hodge.hpp"
#include "bmofem/maximal.hpp"
#include "bmofem/quadrature.hpp"

namespace bmofem::harness {

namespace {

/// Upper bound of M_T w <= C M w + tol on structured meshes: each cell fills
/// half of its grid square.
constexpr double kContainingSquareRatio = 2.0;
constexpr double kMaximalBoundTol = 1e-6;

/// Evaluates fn(level) for every configured level, in order. With more than
/// one worker, levels run concurrently; results do not depend on scheduling.
template <class Fn>
auto map_levels(const ExperimentConfig& config, Fn&& fn) {
    using Result = decltype(fn(config.level_min));
    std::vector<Result> results;
    const int count = config.level_max - config.level_min + 1;
    results.reserve(static_cast<std::size_t>(count));
    if (config.workers <= 1) {
        for (int level = config.level_min; level <= config.level_max; ++level) {
            results.push_back(fn(level));
        }
        return results;
    }
    for (int start = config.level_min; start <= config.level_max; start += config.workers) {
        std::vector<std::future<Result>> batch;
        for (int level = start; level < start + config.workers && level <= config.level_max; ++level) {
            batch.push_back(std::async(std::launch::async, [&fn, level] { return fn(level); }));
        }
        for (auto& f : batch) {
            results.push_back(f.get());
        }
    }
    return results;
}

struct LevelSolve {
    MeshPtr mesh;
    PiecewiseConstantMatrixField coeff_h;
    PCVectorField flux_h;
    P1Function u_h;
};

LevelSolve solve_level(const ExperimentConfig& config, const CoefficientField& coeff,
                       const VectorFieldFn& rhs, int level) {
    MeshPtr mesh = make_uniform_mesh(level);
    auto coeff_h = project_coefficient(coeff, mesh, config.quad_tol);
    auto flux_h = project_rhs(rhs, mesh, config.quad_tol);
    P1Function u_h = solve_projected(coeff_h, flux_h, config.solver_tol);
    return {std::move(mesh), std::move(coeff_h), std::move(flux_h), std::move(u_h)};
}

double max_over_min(const std::vector<double>& v) {
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo;
}

void fill_orders(std::vector<ReportRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& prev = rows[i - 1].err_phat;
        const auto& cur = rows[i].err_phat;
        if (prev && cur && *prev > 0.0 && *cur > 0.0) {
            rows[i].order = std::log2(*prev / *cur);
        }
    }
}

template <class Clock = std::chrono::steady_clock>
double seconds_since(typename Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

P1Function prolong(const P1Function& u, const MeshPtr& fine) {
    const Mesh& coarse = u.mesh();
    if (!coarse.structured() || !fine->structured() || fine->level() < coarse.level()) {
        throw LineageError("prolongation needs a structured refinement descendant");
    }
    Eigen::VectorXd values(static_cast<Eigen::Index>(fine->num_vertices()));
    for (std::size_t v = 0; v < fine->num_vertices(); ++v) {
        values[static_cast<Eigen::Index>(v)] =
            (u.zero_trace() && fine->is_boundary(v)) ? 0.0 : u(fine->vertex(v));
    }
    return P1Function(fine, std::move(values), u.zero_trace());
}

StudyReport run_stability_study(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const CoefficientField coeff = make_coefficient(config);
    const VectorFieldFn rhs = make_rhs(config.rhs);
    struct Out {
        ReportRow row;
        double oscillation;
    };
    auto results = map_levels(config, [&](int level) {
        const LevelSolve s = solve_level(config, coeff, rhs, level);
        ReportRow row;
        row.level = level;
        row.cells = s.mesh->num_cells();
        const double grad_lp = lp_norm(gradient(s.u_h), config.p);
        const double f_lp = lp_norm(s.flux_h, config.p);
        row.grad_lp = grad_lp;
        row.f_lp = f_lp;
        row.stability_ratio = grad_lp / f_lp;
        row.coeff_err_l2 = coefficient_error(coeff, s.coeff_h, 2.0, config.quad_tol);
        row.conj_gap_ratio = conjugate_gap(s.u_h, config.p, config.solver_tol).bound_ratio;
        row.flux_ratio = flux_decompose(s.u_h, s.coeff_h, config.p, config.solver_tol).bound_ratio;
        return Out{row, lp_distance(rhs, s.flux_h, config.p, config.quad_tol)};
    });

    StudyReport report;
    report.config = config;
    ReportTable osc{"data_oscillation", {"level", "f_minus_fh_lp"}, {}};
    std::vector<double> ratios, conj, flux;
    for (const Out& o : results) {
        report.rows.push_back(o.row);
        osc.rows.push_back({static_cast<double>(o.row.level), o.oscillation});
        ratios.push_back(*o.row.stability_ratio);
        conj.push_back(*o.row.conj_gap_ratio);
        flux.push_back(*o.row.flux_ratio);
    }
    report.tables.push_back(std::move(osc));
    report.summary["stability_ratio_max_over_min"] = max_over_min(ratios);
    if (config.p != 2.0) {
        report.summary["conj_gap_ratio_max_over_min"] = max_over_min(conj);
    }
    report.summary["flux_ratio_max_over_min"] = max_over_min(flux);
    report.elapsed_seconds = seconds_since(start);
    return report;
}

StudyReport run_convergence_study(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const CoefficientField coeff = make_coefficient(config);
    const VectorFieldFn rhs = make_rhs(config.rhs);
    const LevelSolve reference = solve_level(config, coeff, rhs, config.effective_ref_level());
    const PCVectorField ref_grad = gradient(reference.u_h);

    auto rows = map_levels(config, [&](int level) {
        const LevelSolve s = solve_level(config, coeff, rhs, level);
        ReportRow row;
        row.level = level;
        row.cells = s.mesh->num_cells();
        const double grad_lp = lp_norm(gradient(s.u_h), config.p);
        const double f_lp = lp_norm(s.flux_h, config.p);
        row.grad_lp = grad_lp;
        row.f_lp = f_lp;
        row.stability_ratio = grad_lp / f_lp;
        const PCVectorField diff = ref_grad - gradient(prolong(s.u_h, reference.mesh));
        row.err_phat = lp_norm(diff, config.p_hat);
        row.coeff_err_l2 = coefficient_error(coeff, s.coeff_h, 2.0, config.quad_tol);
        return row;
    });
    fill_orders(rows);

    StudyReport report;
    report.config = config;
    report.rows = std::move(rows);
    double worst = 0.0;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        worst = std::max(worst, *report.rows[i].err_phat / *report.rows[i - 1].err_phat);
    }
    if (report.rows.size() > 1) {
        report.summary["max_error_ratio"] = worst;
        report.summary["last_order"] = report.rows.back().order.value_or(
            std::numeric_limits<double>::quiet_NaN());
    }
    report.summary["reference_level"] = config.effective_ref_level();
    report.elapsed_seconds = seconds_since(start);
    return report;
}

StudyReport run_coeff_decay_study(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const CoefficientField coeff = make_coefficient(config);
    struct Out {
        ReportRow row;
        double error_r;
        double coercivity;
    };
    auto results = map_levels(config, [&](int level) {
        MeshPtr mesh = make_uniform_mesh(level);
        const auto coeff_h = project_coefficient(coeff, mesh, config.quad_tol);
        ReportRow row;
        row.level = level;
        row.cells = mesh->num_cells();
        row.coeff_err_l2 = coefficient_error(coeff, coeff_h, 2.0, config.quad_tol);
        const double error_r = config.r == 2.0
                                   ? *row.coeff_err_l2
                                   : coefficient_error(coeff, coeff_h, config.r, config.quad_tol);
        return Out{row, error_r, coercivity_of_projection(coeff_h)};
    });

    StudyReport report;
    report.config = config;
    ReportTable decay{"coeff_decay", {"level", "r", "error_lr", "order_lr", "coercivity"}, {}};
    double min_coercivity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < results.size(); ++i) {
        ReportRow row = results[i].row;
        std::optional<double> order_r;
        if (i > 0) {
            const double prev2 = *results[i - 1].row.coeff_err_l2;
            if (prev2 > 0.0 && *row.coeff_err_l2 > 0.0) {
                row.order = std::log2(prev2 / *row.coeff_err_l2);
            }
            if (results[i - 1].error_r > 0.0 && results[i].error_r > 0.0) {
                order_r = std::log2(results[i - 1].error_r / results[i].error_r);
            }
        }
        report.rows.push_back(row);
        decay.rows.push_back({static_cast<double>(row.level), config.r, results[i].error_r, order_r,
                              results[i].coercivity});
        min_coercivity = std::min(min_coercivity, results[i].coercivity);
    }
    report.tables.push_back(std::move(decay));
    report.summary["min_coercivity"] = min_coercivity;
    report.summary["declared_alpha"] = coeff.alpha;
    if (report.rows.size() > 1 && report.rows.back().order) {
        report.summary["last_order"] = *report.rows.back().order;
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

StudyReport run_hodge_suite(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (config.level_min < 1) {
        throw ConfigError("the Hodge suite needs levels >= 1 (level 0 has no interior vertex)");
    }
    struct Out {
        ReportRow row;
        std::vector<std::optional<double>> metrics;
        std::array<double, 3> stability;
    };
    const std::array<double, 3> exponents = {1.5, 2.0, 3.0};
    auto results = map_levels(config, [&](int level) {
        MeshPtr mesh = make_uniform_mesh(level);
        std::mt19937_64 rng(config.seed + 1000003ULL * static_cast<std::uint64_t>(level));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const SparseMatrix laplacian = assemble_laplacian(*mesh);
        const double max_hat_norm = std::sqrt(laplacian.diagonal().maxCoeff());

        double reconstruction = 0.0, orthogonality = 0.0, orth_relative = 0.0;
        double idempotence = 0.0, pythagoras = 0.0;
        std::array<double, 3> stability = {0.0, 0.0, 0.0};
        for (int sample = 0; sample < config.samples; ++sample) {
            PCVectorField s = PCVectorField::zero(mesh);
            for (Vec2& v : s.values) {
                const double a = unit(rng);
                const double b = unit(rng);
                v = Vec2(a, b);
            }
            const HodgeSplit split = hodge_decompose(s, config.solver_tol);
            const PCVectorField grad = gradient(split.potential);
            reconstruction = std::max(reconstruction, split.reconstruction_residual);
            orthogonality = std::max(orthogonality, split.orthogonality_residual);
            const double g_l2 = lp_norm(split.sigma, 2.0);
            orth_relative =
                std::max(orth_relative, split.orthogonality_residual / (g_l2 * max_hat_norm));

            const HodgeSplit again_grad = hodge_decompose(grad, config.solver_tol);
            const HodgeSplit again_sigma = hodge_decompose(split.sigma, config.solver_tol);
            idempotence = std::max(
                {idempotence,
                 (again_grad.potential.values() - split.potential.values()).cwiseAbs().maxCoeff(),
                 max_difference(again_grad.sigma, PCVectorField::zero(mesh)),
                 again_sigma.potential.values().cwiseAbs().maxCoeff(),
                 max_difference(again_sigma.sigma, split.sigma)});

            const double s2 = std::pow(lp_norm(s, 2.0), 2);
            const double grad2 = std::pow(lp_norm(grad, 2.0), 2);
            pythagoras = std::max(pythagoras, std::abs(s2 - grad2 - g_l2 * g_l2) / s2);
            for (std::size_t i = 0; i < exponents.size(); ++i) {
                const double r = exponents[i];
                stability[i] = std::max(
                    stability[i], (lp_norm(grad, r) + lp_norm(split.sigma, r)) / lp_norm(s, r));
            }
        }
        ReportRow row;
        row.level = level;
        row.cells = mesh->num_cells();
        std::vector<std::optional<double>> metrics = {
            static_cast<double>(level), static_cast<double>(config.samples), reconstruction,
            orthogonality, orth_relative, idempotence, pythagoras, stability[0], stability[1],
            stability[2]};
        return Out{row, metrics, stability};
    });

    StudyReport report;
    report.config = config;
    ReportTable table{"hodge",
                      {"level", "samples", "reconstruction", "orthogonality", "orthogonality_relative",
                       "idempotence", "pythagoras", "stability_r1_5", "stability_r2", "stability_r3"},
                      {}};
    std::array<std::vector<double>, 3> per_exponent;
    double worst_reconstruction = 0.0, worst_orth = 0.0, worst_orth_rel = 0.0;
    double worst_idem = 0.0, worst_pyth = 0.0;
    for (const Out& o : results) {
        report.rows.push_back(o.row);
        table.rows.push_back(o.metrics);
        worst_reconstruction = std::max(worst_reconstruction, *o.metrics[2]);
        worst_orth = std::max(worst_orth, *o.metrics[3]);
        worst_orth_rel = std::max(worst_orth_rel, *o.metrics[4]);
        worst_idem = std::max(worst_idem, *o.metrics[5]);
        worst_pyth = std::max(worst_pyth, *o.metrics[6]);
        for (std::size_t i = 0; i < 3; ++i) {
            per_exponent[i].push_back(o.stability[i]);
        }
    }
    report.tables.push_back(std::move(table));
    report.summary["max_reconstruction"] = worst_reconstruction;
    report.summary["max_orthogonality"] = worst_orth;
    report.summary["max_orthogonality_relative"] = worst_orth_rel;
    report.summary["max_idempotence"] = worst_idem;
    report.summary["max_pythagoras"] = worst_pyth;
    report.summary["stability_r2_max"] =
        *std::max_element(per_exponent[1].begin(), per_exponent[1].end());
    report.summary["stability_r1_5_max_over_min"] = max_over_min(per_exponent[0]);
    report.summary["stability_r3_max_over_min"] = max_over_min(per_exponent[2]);
    report.elapsed_seconds = seconds_since(start);
    return report;
}

StudyReport run_bmo_diagnostics(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const ScalarField w = make_scalar(config);

    StudyReport report;
    report.config = config;

    ReportTable bmo{"bmo", {"depth", "estimate"}, {}};
    const auto profile = bmo_profile(w, config.depth);
    for (std::size_t d = 0; d < profile.size(); ++d) {
        bmo.rows.push_back({static_cast<double>(d), profile[d]});
    }

    ReportTable jn{"john_nirenberg", {"lambda", "fraction"}, {}};
    for (const auto& point : john_nirenberg_check(w, {0, 0, 0}, config.lambdas, config.jn_depth)) {
        jn.rows.push_back({point.lambda, point.fraction});
    }

    struct Out {
        ReportRow row;
        std::vector<std::optional<double>> bound;
        double violations;
    };
    const int g = config.grid_points;
    auto results = map_levels(config, [&](int level) {
        MeshPtr mesh = make_uniform_mesh(level);
        auto abs_w = [&w](const Point& z) { return std::abs(w(z)); };
        std::vector<double> cell_avg;
        cell_avg.reserve(mesh->num_cells());
        for (std::size_t k = 0; k < mesh->num_cells(); ++k) {
            cell_avg.push_back(triangle_average_refined(abs_w, mesh->corners(k), kDyadicRelTol));
        }
        const DyadicAverageTable dyadic(w, level);
        double violations = 0.0;
        double max_excess = -std::numeric_limits<double>::infinity();
        double max_ratio = 0.0;
        for (int j = 0; j < g; ++j) {
            for (int i = 0; i < g; ++i) {
                const Point x(static_cast<double>(i) / (g - 1), static_cast<double>(j) / (g - 1));
                double mesh_max = 0.0;
                for (std::size_t k : mesh->cells_containing(x)) {
                    mesh_max = std::max(mesh_max, cell_avg[k]);
                }
                const double dyadic_max = dyadic.maximal(x);
                const double excess = mesh_max - kContainingSquareRatio * dyadic_max;
                max_excess = std::max(max_excess, excess);
                if (excess > kMaximalBoundTol) {
                    violations += 1.0;
                }
                if (dyadic_max > 0.0) {
                    max_ratio = std::max(max_ratio, mesh_max / dyadic_max);
                }
            }
        }
        ReportRow row;
        row.level = level;
        row.cells = mesh->num_cells();
        return Out{row,
                   {static_cast<double>(level), static_cast<double>(g * g), violations, max_excess,
                    max_ratio},
                   violations};
    });
    ReportTable bound{"maximal_bound", {"level", "samples", "violations", "max_excess", "max_ratio"}, {}};
    double total_violations = 0.0;
    for (const Out& o : results) {
        report.rows.push_back(o.row);
        bound.rows.push_back(o.bound);
        total_violations += o.violations;
    }

    report.tables.push_back(std::move(bmo));
    report.tables.push_back(std::move(jn));
    report.tables.push_back(std::move(bound));
    report.summary["bmo_estimate"] = profile.back();
    if (profile.size() >= 2) {
        const double prev = profile[profile.size() - 2];
        report.summary["bmo_last_increment_relative"] =
            prev > 0.0 ? (profile.back() - prev) / prev : 0.0;
    }
    report.summary["maximal_bound_violations"] = total_violations;
    report.elapsed_seconds = seconds_since(start);
    return report;
}

StudyReport run_study(const ExperimentConfig& config) {
    config.validate();
    switch (config.kind) {
        case StudyKind::stability: return run_stability_study(config);
        case StudyKind::convergence: return run_convergence_study(config);
        case StudyKind::hodge_suite: return run_hodge_suite(config);
        case StudyKind::coeff_decay: return run_coeff_decay_study(config);
        case StudyKind::bmo_diagnostics: return run_bmo_diagnostics(config);
    }
    throw ConfigError("unknown experiment kind");
}

}  // namespace bmofem::harness
