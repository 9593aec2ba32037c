#pragma once

#include "bmofem/assembly.hpp"
#include "bmofem/coeff.hpp"
#include "bmofem/fem.hpp"
#include "bmofem/solver.hpp"

namespace bmofem {

struct Tolerances {
    /// Relative tolerance of coefficient and right-hand-side cell averages.
    double quadrature = 1e-6;
    /// Relative residual of the conjugate-gradient solve.
    double solver = kDefaultSolverTol;
};

/// Galerkin solution with a piecewise-constant coefficient and flux:
/// find u_h in X_h with (A_h grad u_h, grad z) = (f_h, grad z) for all z.
/// Verifies that the algebraic residual against every interior hat is at
/// most 1e-9 ||b||_inf.
P1Function solve_projected(const PiecewiseConstantMatrixField& coeff, const PCVectorField& flux,
                           double solver_tol = kDefaultSolverTol);

/// Projects A and f to cell averages, assembles and solves.
P1Function solve_bvp(const MeshPtr& mesh, const CoefficientField& coeff, const VectorFieldFn& f,
                     const Tolerances& tols = {});

}  // namespace bmofem
