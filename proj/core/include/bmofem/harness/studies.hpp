#pragma once

#include "bmofem/fem.hpp"
#include "bmofem/harness/config.hpp"
#include "bmofem/harness/report.hpp"
#include "bmofem/mesh.hpp"

namespace bmofem::harness {

/// Represents u on a finer structured mesh of the same hierarchy. Exact, since
/// the coarse P1 space is contained in the fine one. Throws LineageError
/// unless both meshes are structured and fine is at least as deep.
P1Function prolong(const P1Function& u, const MeshPtr& fine);

/// Per level: ||grad u_h||_p / ||f_h||_p, the coefficient error, and the
/// conjugate-gap and flux bound ratios. Table `data_oscillation` holds
/// ||f - f_h||_p. Summary: stability_ratio_max_over_min, conj_gap_ratio_max_over_min,
/// flux_ratio_max_over_min.
StudyReport run_stability_study(const ExperimentConfig& config);

/// Gradient errors in L^p_hat against a reference solution on the reference
/// level, with observed orders between consecutive levels. Summary:
/// max_error_ratio (largest e_{L+1}/e_L) and last_order.
StudyReport run_convergence_study(const ExperimentConfig& config);

/// ||A - A_h||_{L^2} per level (main CSV) and ||A - A_h||_{L^r} (table
/// `coeff_decay`), with observed orders.
StudyReport run_coeff_decay_study(const ExperimentConfig& config);

/// Random piecewise-constant fields per level through the Hodge
/// decomposition; table `hodge` holds residuals and stability ratios.
StudyReport run_hodge_suite(const ExperimentConfig& config);

/// Tables `bmo` (running seminorm estimate per depth), `john_nirenberg`
/// (distribution fractions on the unit square) and `maximal_bound`
/// (violations of M_T w <= 2 M_dyadic w + 1e-6 on the sample grid).
StudyReport run_bmo_diagnostics(const ExperimentConfig& config);

/// Validates the config and dispatches on its kind.
StudyReport run_study(const ExperimentConfig& config);

}  // namespace bmofem::harness
