#pragma once

#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "bmofem/coeff.hpp"
#include "bmofem/fem.hpp"
#include "bmofem/mesh.hpp"

namespace bmofem {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Symmetric positive definite system over the interior-vertex unknowns.
struct SparseSPDSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
};

/// M[i][j] = sum_K |K| <A_K grad phi_j, grad phi_i> over interior hats.
/// Contributions are accumulated in cell order, and each off-diagonal pair is
/// computed once, so the stored matrix is exactly symmetric.
SparseMatrix assemble_stiffness(const Mesh& mesh, const PiecewiseConstantMatrixField& coeff);

/// Stiffness matrix of the identity coefficient.
SparseMatrix assemble_laplacian(const Mesh& mesh);

/// b[i] = sum_K |K| <f_K, grad phi_i>.
Eigen::VectorXd assemble_rhs(const Mesh& mesh, const PCVectorField& f);

/// Debug dump in coordinate format: one `i j value` line per stored entry.
void write_system(std::ostream& out, const SparseMatrix& matrix);

}  // namespace bmofem
