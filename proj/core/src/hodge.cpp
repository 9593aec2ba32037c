#include "bmofem/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmofem/assembly.hpp"
#include "bmofem/errors.hpp"

namespace bmofem {

namespace {

void check_exponent(double p) {
    if (!(p >= 1.1 && p <= 10.0)) {
        throw BoundsError("exponent p=" + std::to_string(p) + " outside [1.1, 10]");
    }
}

}  // namespace

HodgeSplit hodge_decompose(const PCVectorField& s, double solver_tol) {
    const Mesh& mesh = *s.mesh;
    if (s.values.size() != mesh.num_cells()) {
        throw InvariantError("vector field is not aligned with its mesh");
    }
    if (mesh.num_interior() == 0) {
        throw DomainTooCoarseError("Hodge decomposition needs at least one interior vertex");
    }
    const SparseMatrix laplacian = assemble_laplacian(mesh);
    const SolveResult solved = solve_spd(laplacian, assemble_rhs(mesh, s), solver_tol);
    P1Function potential = P1Function::from_interior(s.mesh, solved.x);
    const PCVectorField grad = gradient(potential);
    PCVectorField sigma = s - grad;

    double reconstruction = 0.0;
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        reconstruction =
            std::max(reconstruction, (s.values[k] - grad.values[k] - sigma.values[k]).norm());
    }
    const Eigen::VectorXd orth = assemble_rhs(mesh, sigma);
    return {std::move(potential), std::move(sigma), reconstruction, orth.cwiseAbs().maxCoeff()};
}

PCVectorField conjugate_field(const P1Function& u, double p) {
    check_exponent(p);
    PCVectorField g = gradient(u);
    for (Vec2& v : g.values) {
        const double magnitude = v.norm();
        if (magnitude == 0.0) {
            v.setZero();
        } else if (p != 2.0) {
            v *= std::pow(magnitude, p - 2.0);
        }
    }
    return g;
}

ConjugateGap conjugate_gap(const P1Function& u, double p, double solver_tol) {
    check_exponent(p);
    const PCVectorField grad = gradient(u);
    const double grad_p = lp_norm(grad, p);
    if (grad_p == 0.0) {
        throw DegenerateInputError("conjugate gap of a function with zero gradient");
    }
    const double q = p / (p - 1.0);
    const HodgeSplit split = hodge_decompose(conjugate_field(u, p), solver_tol);
    ConjugateGap gap;
    gap.g_norm = detail::lp_norm_unchecked(split.sigma, q);
    if (p != 2.0) {
        gap.bound_ratio = gap.g_norm / (std::abs(p - 2.0) * std::pow(grad_p, p / q));
    }
    return gap;
}

FluxSplit flux_decompose(const P1Function& u, const PiecewiseConstantMatrixField& coeff, double p,
                         double solver_tol) {
    check_exponent(p);
    if (coeff.mesh != u.mesh_ptr()) {
        throw InvariantError("coefficient and function live on different meshes");
    }
    PCVectorField flux = gradient(u);
    const double grad_p = lp_norm(flux, p);
    for (std::size_t k = 0; k < flux.values.size(); ++k) {
        flux.values[k] = coeff.values[k] * flux.values[k];
    }
    HodgeSplit split = hodge_decompose(flux, solver_tol);
    const double ratio = grad_p > 0.0 ? lp_norm(split.sigma, p) / grad_p
                                      : std::numeric_limits<double>::quiet_NaN();
    return {std::move(split.potential), std::move(split.sigma), ratio};
}

}  // namespace bmofem
