#include "bmofem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bmofem/errors.hpp"
#include "bmofem/quadrature.hpp"

namespace bmofem {

P1Function::P1Function(MeshPtr mesh, Eigen::VectorXd values, bool zero_trace)
    : mesh_(std::move(mesh)), values_(std::move(values)), zero_trace_(zero_trace) {
    if (!mesh_) {
        throw InvariantError("P1Function requires a mesh");
    }
    if (static_cast<std::size_t>(values_.size()) != mesh_->num_vertices()) {
        throw InvariantError("P1Function value count does not match vertex count");
    }
    if (zero_trace_) {
        for (std::size_t v = 0; v < mesh_->num_vertices(); ++v) {
            if (mesh_->is_boundary(v) && values_[static_cast<Eigen::Index>(v)] != 0.0) {
                throw InvariantError("zero-trace P1Function is nonzero at boundary vertex " +
                                     std::to_string(v));
            }
        }
    }
}

P1Function P1Function::zero(MeshPtr mesh, bool zero_trace) {
    const auto n = static_cast<Eigen::Index>(mesh->num_vertices());
    return P1Function(std::move(mesh), Eigen::VectorXd::Zero(n), zero_trace);
}

P1Function P1Function::interpolate(MeshPtr mesh, const ScalarField& f, bool zero_trace) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(mesh->num_vertices()));
    for (std::size_t v = 0; v < mesh->num_vertices(); ++v) {
        values[static_cast<Eigen::Index>(v)] =
            (zero_trace && mesh->is_boundary(v)) ? 0.0 : f(mesh->vertex(v));
    }
    return P1Function(std::move(mesh), std::move(values), zero_trace);
}

P1Function P1Function::hat(MeshPtr mesh, std::size_t v) {
    if (v >= mesh->num_vertices()) {
        throw BoundsError("vertex index out of range");
    }
    Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh->num_vertices()));
    values[static_cast<Eigen::Index>(v)] = 1.0;
    const bool interior = !mesh->is_boundary(v);
    return P1Function(std::move(mesh), std::move(values), interior);
}

P1Function P1Function::from_interior(MeshPtr mesh, const Eigen::VectorXd& interior) {
    if (static_cast<std::size_t>(interior.size()) != mesh->num_interior()) {
        throw InvariantError("interior value count does not match the mesh");
    }
    Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh->num_vertices()));
    const auto& verts = mesh->interior_vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        values[static_cast<Eigen::Index>(verts[i])] = interior[static_cast<Eigen::Index>(i)];
    }
    return P1Function(std::move(mesh), std::move(values), true);
}

Eigen::VectorXd P1Function::interior_values() const {
    const auto& verts = mesh_->interior_vertices();
    Eigen::VectorXd out(static_cast<Eigen::Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = values_[static_cast<Eigen::Index>(verts[i])];
    }
    return out;
}

double P1Function::operator()(const Point& x) const {
    const auto cells = mesh_->cells_containing(x, 1e-10);
    if (cells.empty()) {
        throw BoundsError("evaluation point (" + std::to_string(x.x()) + ", " +
                          std::to_string(x.y()) + ") outside the mesh");
    }
    const std::size_t k = cells.front();
    const auto p = mesh_->corners(k);
    const auto grads = hat_gradients(*mesh_, k);
    const Cell& c = mesh_->cell(k);
    double value = 0.0;
    for (int a = 0; a < 3; ++a) {
        // lambda_a(x) = 1 + grad lambda_a . (x - p_a)
        const double lambda = 1.0 + grads[a].dot(x - p[a]);
        value += values_[static_cast<Eigen::Index>(c[a])] * lambda;
    }
    return value;
}

PCVectorField PCVectorField::zero(MeshPtr mesh) { return constant(std::move(mesh), Vec2::Zero()); }

PCVectorField PCVectorField::constant(MeshPtr mesh, const Vec2& v) {
    const std::size_t n = mesh->num_cells();
    return {std::move(mesh), std::vector<Vec2>(n, v)};
}

namespace {

void check_aligned(const PCVectorField& a, const PCVectorField& b) {
    if (a.mesh != b.mesh || a.values.size() != b.values.size()) {
        throw InvariantError("vector fields live on different meshes");
    }
}

}  // namespace

PCVectorField operator+(const PCVectorField& a, const PCVectorField& b) {
    check_aligned(a, b);
    PCVectorField out = a;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] += b.values[k];
    }
    return out;
}

PCVectorField operator-(const PCVectorField& a, const PCVectorField& b) {
    check_aligned(a, b);
    PCVectorField out = a;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] -= b.values[k];
    }
    return out;
}

PCVectorField operator*(double c, const PCVectorField& a) {
    PCVectorField out = a;
    for (Vec2& v : out.values) {
        v *= c;
    }
    return out;
}

double max_difference(const PCVectorField& a, const PCVectorField& b) {
    check_aligned(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        worst = std::max(worst, (a.values[k] - b.values[k]).norm());
    }
    return worst;
}

std::array<Vec2, 3> hat_gradients(const Mesh& mesh, std::size_t k) {
    const double a2 = mesh.signed_area2(k);
    if (!(a2 > 0.0)) {
        throw GeometryError(k, "degenerate or inverted cell");
    }
    const auto p = mesh.corners(k);
    std::array<Vec2, 3> g;
    for (int a = 0; a < 3; ++a) {
        const Point& b = p[(a + 1) % 3];
        const Point& c = p[(a + 2) % 3];
        // Rotated opposite edge, scaled so that grad . (p_a - b) = 1.
        g[a] = Vec2(b.y() - c.y(), c.x() - b.x()) / a2;
    }
    return g;
}

PCVectorField gradient(const P1Function& u) {
    const Mesh& mesh = u.mesh();
    PCVectorField out{u.mesh_ptr(), std::vector<Vec2>(mesh.num_cells(), Vec2::Zero())};
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        const auto g = hat_gradients(mesh, k);
        const Cell& c = mesh.cell(k);
        Vec2 sum = Vec2::Zero();
        for (int a = 0; a < 3; ++a) {
            sum += u.values()[static_cast<Eigen::Index>(c[a])] * g[a];
        }
        out.values[k] = sum;
    }
    return out;
}

PCVectorField project_rhs(const VectorFieldFn& f, const MeshPtr& mesh, double rel_tol) {
    check_quadrature_tolerance(rel_tol);
    PCVectorField out{mesh, {}};
    out.values.reserve(mesh->num_cells());
    for (std::size_t k = 0; k < mesh->num_cells(); ++k) {
        out.values.push_back(triangle_average(f, mesh->corners(k), rel_tol));
    }
    return out;
}

double detail::lp_norm_unchecked(const PCVectorField& field, double p) {
    const Mesh& mesh = *field.mesh;
    // hypot avoids overflow of the squared components.
    auto magnitude = [](const Vec2& v) { return std::hypot(v.x(), v.y()); };
    double peak = 0.0;
    for (const Vec2& v : field.values) {
        peak = std::max(peak, magnitude(v));
    }
    if (peak == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        sum += mesh.area(k) * std::pow(magnitude(field.values[k]) / peak, p);
    }
    return peak * std::pow(sum, 1.0 / p);
}

double lp_norm(const PCVectorField& field, double p) {
    if (!(p >= 1.1 && p <= 10.0)) {
        throw BoundsError("exponent p=" + std::to_string(p) + " outside [1.1, 10]");
    }
    return detail::lp_norm_unchecked(field, p);
}

double lp_distance(const VectorFieldFn& f, const PCVectorField& field, double p, double rel_tol) {
    if (!(p >= 1.1 && p <= 10.0)) {
        throw BoundsError("exponent p=" + std::to_string(p) + " outside [1.1, 10]");
    }
    check_quadrature_tolerance(rel_tol);
    const Mesh& mesh = *field.mesh;
    double total = 0.0;
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        const Vec2& cell_value = field.values[k];
        auto integrand = [&](const Point& x) { return std::pow((f(x) - cell_value).norm(), p); };
        total += mesh.area(k) * triangle_average_refined(integrand, mesh.corners(k), rel_tol);
    }
    return std::pow(total, 1.0 / p);
}

}  // namespace bmofem
