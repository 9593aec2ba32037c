#include "bmofem/bvp.hpp"

#include <string>

#include "bmofem/errors.hpp"

namespace bmofem {

P1Function solve_projected(const PiecewiseConstantMatrixField& coeff, const PCVectorField& flux,
                           double solver_tol) {
    const Mesh& mesh = *coeff.mesh;
    if (flux.mesh != coeff.mesh) {
        throw InvariantError("coefficient and right-hand side live on different meshes");
    }
    SparseSPDSystem system{assemble_stiffness(mesh, coeff), assemble_rhs(mesh, flux)};
    const SolveResult solved = solve_spd(system, solver_tol);

    if (system.rhs.size() == 0) {
        return P1Function::from_interior(coeff.mesh, solved.x);
    }
    const Eigen::VectorXd residual = system.rhs - system.matrix * solved.x;
    const double b_inf = system.rhs.cwiseAbs().maxCoeff();
    if (residual.cwiseAbs().maxCoeff() > 1e-9 * b_inf) {
        throw ConvergenceError("Galerkin residual " + std::to_string(residual.cwiseAbs().maxCoeff()) +
                                   " exceeds 1e-9 ||b||_inf",
                               residual.norm());
    }
    return P1Function::from_interior(coeff.mesh, solved.x);
}

P1Function solve_bvp(const MeshPtr& mesh, const CoefficientField& coeff, const VectorFieldFn& f,
                     const Tolerances& tols) {
    const auto coeff_h = project_coefficient(coeff, mesh, tols.quadrature);
    const auto flux_h = project_rhs(f, mesh, tols.quadrature);
    return solve_projected(coeff_h, flux_h, tols.solver);
}

}  // namespace bmofem
