#include "bmofem/solver.hpp"

#include <string>

#include "bmofem/errors.hpp"

namespace bmofem {

SolveResult solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                      double rel_residual_tol) {
    if (!(rel_residual_tol >= 1e-14 && rel_residual_tol <= 1e-6)) {
        throw BoundsError("solver tolerance " + std::to_string(rel_residual_tol) +
                          " outside [1e-14, 1e-6]");
    }
    const Eigen::Index n = matrix.rows();
    if (matrix.cols() != n || rhs.size() != n) {
        throw InvariantError("system dimensions do not match");
    }
    for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
            if (it.value() != matrix.coeff(it.col(), it.row())) {
                throw InvariantError("system matrix is not exactly symmetric");
            }
        }
    }
    const Eigen::VectorXd diag = matrix.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(diag[i] > 0.0)) {
            throw NotSpdError("nonpositive diagonal entry at row " + std::to_string(i));
        }
    }
    const Eigen::VectorXd inv_diag = diag.cwiseInverse();

    SolveResult result;
    result.x = Eigen::VectorXd::Zero(n);
    const double b_norm = rhs.norm();
    if (b_norm == 0.0) {
        return result;
    }
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    Eigen::VectorXd q(n);
    double rz = r.dot(z);
    const long cap = 50 * static_cast<long>(n);
    for (long it = 0; it < cap; ++it) {
        q.noalias() = matrix * p;
        const double curvature = p.dot(q);
        if (!(curvature > 0.0)) {
            throw NotSpdError("nonpositive curvature " + std::to_string(curvature) +
                              " at iteration " + std::to_string(it));
        }
        const double step = rz / curvature;
        result.x += step * p;
        r -= step * q;
        result.iterations = static_cast<int>(it + 1);
        result.relative_residual = r.norm() / b_norm;
        if (result.relative_residual <= rel_residual_tol) {
            return result;
        }
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw ConvergenceError("conjugate gradients hit the iteration cap with relative residual " +
                               std::to_string(result.relative_residual),
                           result.relative_residual);
}

}  // namespace bmofem
