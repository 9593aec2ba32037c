#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "bmofem/coeff.hpp"
#include "bmofem/mesh.hpp"
#include "bmofem/types.hpp"

namespace bmofem {

using VectorFieldFn = std::function<Vec2(const Point&)>;

/// Continuous piecewise-linear function given by its vertex values.
///
/// zero_trace marks members of the Dirichlet space: every boundary vertex
/// value is then exactly zero.
class P1Function {
public:
    P1Function(MeshPtr mesh, Eigen::VectorXd values, bool zero_trace);

    static P1Function zero(MeshPtr mesh, bool zero_trace = true);
    /// Vertex interpolant; with zero_trace the boundary values are set to 0.
    static P1Function interpolate(MeshPtr mesh, const ScalarField& f, bool zero_trace);
    /// Nodal basis function of vertex v (zero trace iff v is interior).
    static P1Function hat(MeshPtr mesh, std::size_t v);
    /// Zero-trace function from its interior (unknown-ordered) values.
    static P1Function from_interior(MeshPtr mesh, const Eigen::VectorXd& interior);

    const Mesh& mesh() const { return *mesh_; }
    const MeshPtr& mesh_ptr() const { return mesh_; }
    const Eigen::VectorXd& values() const { return values_; }
    bool zero_trace() const { return zero_trace_; }
    Eigen::VectorXd interior_values() const;

    /// Point evaluation through the containing cell.
    double operator()(const Point& x) const;

private:
    MeshPtr mesh_;
    Eigen::VectorXd values_;
    bool zero_trace_;
};

/// Cell-wise constant vector field.
struct PCVectorField {
    MeshPtr mesh;
    std::vector<Vec2> values;

    static PCVectorField zero(MeshPtr mesh);
    static PCVectorField constant(MeshPtr mesh, const Vec2& v);
    std::size_t size() const { return values.size(); }
};

PCVectorField operator+(const PCVectorField& a, const PCVectorField& b);
PCVectorField operator-(const PCVectorField& a, const PCVectorField& b);
PCVectorField operator*(double c, const PCVectorField& a);
/// max over cells of the Euclidean norm of a - b.
double max_difference(const PCVectorField& a, const PCVectorField& b);

/// Gradients of the three barycentric coordinates of cell k.
std::array<Vec2, 3> hat_gradients(const Mesh& mesh, std::size_t k);

PCVectorField gradient(const P1Function& u);

/// Cell averages of f by the adaptive midpoint rule used for coefficients.
PCVectorField project_rhs(const VectorFieldFn& f, const MeshPtr& mesh, double rel_tol);

/// (sum_K |K| |v_K|^p)^(1/p) with p in [1.1, 10].
double lp_norm(const PCVectorField& field, double p);

namespace detail {
/// lp_norm without the exponent range check (conjugate exponents of p near
/// 1.1 exceed 10). Requires p >= 1.
double lp_norm_unchecked(const PCVectorField& field, double p);
}  // namespace detail

/// ||f - g_h||_{L^p} with f sampled by adaptive quadrature on each cell.
double lp_distance(const VectorFieldFn& f, const PCVectorField& field, double p, double rel_tol);

}  // namespace bmofem
