#pragma once

#include <Eigen/Core>

#include "bmofem/assembly.hpp"

namespace bmofem {

struct SolveResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double relative_residual = 0.0;
};

inline constexpr double kDefaultSolverTol = 1e-12;

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
///
/// Stops when ||b - Mx||_2 <= rel_residual_tol * ||b||_2, with
/// rel_residual_tol in [1e-14, 1e-6] and at most 50 n iterations. Throws
/// NotSpdError on a nonpositive diagonal or curvature, ConvergenceError at the
/// iteration cap.
SolveResult solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                      double rel_residual_tol = kDefaultSolverTol);

inline SolveResult solve_spd(const SparseSPDSystem& system,
                             double rel_residual_tol = kDefaultSolverTol) {
    return solve_spd(system.matrix, system.rhs, rel_residual_tol);
}

}  // namespace bmofem
