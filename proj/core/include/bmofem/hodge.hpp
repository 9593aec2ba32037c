#pragma once

#include "bmofem/coeff.hpp"
#include "bmofem/fem.hpp"
#include "bmofem/solver.hpp"

namespace bmofem {

/// s = grad(potential) + sigma, with sigma discretely divergence free:
/// (sigma, grad z) = 0 for every zero-trace P1 function z.
struct HodgeSplit {
    P1Function potential;
    PCVectorField sigma;
    /// max over cells of |s - grad(potential) - sigma|.
    double reconstruction_residual = 0.0;
    /// max over interior hats phi_i of |(sigma, grad phi_i)|.
    double orthogonality_residual = 0.0;
};

/// Discrete Hodge decomposition of a piecewise-constant field.
///
/// The potential solves the identity-coefficient discrete Poisson problem
/// with right-hand side (s, grad z); sigma is the remainder. The split does
/// not depend on the exponent in which it is later measured. Throws
/// DomainTooCoarseError on a mesh without interior vertices.
HodgeSplit hodge_decompose(const PCVectorField& s, double solver_tol = kDefaultSolverTol);

/// |grad u|^(p-2) grad u per cell; cells with zero gradient map to zero.
PCVectorField conjugate_field(const P1Function& u, double p);

struct ConjugateGap {
    /// ||g_h||_{L^q} of the divergence-free part of the conjugate field.
    double g_norm = 0.0;
    /// g_norm / (|p - 2| ||grad u||_{L^p}^{p/q}); 0 at p = 2.
    double bound_ratio = 0.0;
};

/// Throws DegenerateInputError when grad u vanishes identically.
ConjugateGap conjugate_gap(const P1Function& u, double p, double solver_tol = kDefaultSolverTol);

struct FluxSplit {
    P1Function grad_part;
    PCVectorField ell;
    /// ||ell||_{L^p} / ||grad u||_{L^p}.
    double bound_ratio = 0.0;
};

/// Hodge decomposition of the discrete flux A_h grad u.
FluxSplit flux_decompose(const P1Function& u, const PiecewiseConstantMatrixField& coeff, double p,
                         double solver_tol = kDefaultSolverTol);

}  // namespace bmofem
