#include "bmofem/assembly.hpp"

#include <cstdio>
#include <ostream>
#include <vector>

#include "bmofem/errors.hpp"

namespace bmofem {

namespace {

template <class CellCoefficient>
SparseMatrix assemble(const Mesh& mesh, CellCoefficient&& coefficient_of) {
    const auto n = static_cast<Eigen::Index>(mesh.num_interior());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(9 * mesh.num_cells());
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        const auto g = hat_gradients(mesh, k);
        const Mat2& a = coefficient_of(k);
        const double area = mesh.area(k);
        const Cell& c = mesh.cell(k);
        for (int i = 0; i < 3; ++i) {
            const std::ptrdiff_t row = mesh.dof(c[i]);
            if (row < 0) {
                continue;
            }
            for (int j = i; j < 3; ++j) {
                const std::ptrdiff_t col = mesh.dof(c[j]);
                if (col < 0) {
                    continue;
                }
                const double value = area * g[i].dot(a * g[j]);
                triplets.emplace_back(row, col, value);
                if (row != col) {
                    triplets.emplace_back(col, row, value);
                }
            }
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh, const PiecewiseConstantMatrixField& coeff) {
    if (coeff.values.size() != mesh.num_cells()) {
        throw InvariantError("coefficient is not aligned with the mesh");
    }
    const double alpha = coercivity_of_projection(coeff);
    if (!(alpha > 0.0)) {
        throw InvariantError("assembly refused: projected coefficient has coercivity " +
                             std::to_string(alpha) + " <= 0");
    }
    return assemble(mesh, [&](std::size_t k) -> const Mat2& { return coeff.values[k]; });
}

SparseMatrix assemble_laplacian(const Mesh& mesh) {
    static const Mat2 identity = Mat2::Identity();
    return assemble(mesh, [](std::size_t) -> const Mat2& { return identity; });
}

Eigen::VectorXd assemble_rhs(const Mesh& mesh, const PCVectorField& f) {
    if (f.values.size() != mesh.num_cells()) {
        throw InvariantError("right-hand side is not aligned with the mesh");
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_interior()));
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        const auto g = hat_gradients(mesh, k);
        const double area = mesh.area(k);
        const Cell& c = mesh.cell(k);
        for (int i = 0; i < 3; ++i) {
            const std::ptrdiff_t row = mesh.dof(c[i]);
            if (row >= 0) {
                b[row] += area * f.values[k].dot(g[i]);
            }
        }
    }
    return b;
}

void write_system(std::ostream& out, const SparseMatrix& matrix) {
    char buf[96];
    for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(it.row()),
                          static_cast<long>(it.col()), it.value());
            out << buf;
        }
    }
}

}  // namespace bmofem
