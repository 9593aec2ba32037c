#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "bmofem/types.hpp"

namespace bmofem {

/// Deepest refinement level accepted by build_uniform_mesh (2*4^12 cells).
inline constexpr int kMaxMeshLevel = 12;

using Cell = std::array<std::size_t, 3>;

/// Conforming triangulation of the unit square.
///
/// Immutable after construction. Meshes produced by build_uniform_mesh are
/// "structured": vertex (i, j) of the (2^L+1)^2 grid has index j*(2^L+1)+i and
/// grid square (i, j) holds cells 2*(j*2^L+i) (below the diagonal) and
/// 2*(j*2^L+i)+1 (above it). Structured meshes get O(1) point location.
class Mesh {
public:
    Mesh(std::vector<Point> vertices, std::vector<Cell> cells,
         std::vector<bool> boundary, int level, bool structured = false);

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_cells() const noexcept { return cells_.size(); }
    std::size_t num_interior() const noexcept { return interior_.size(); }
    int level() const noexcept { return level_; }
    bool structured() const noexcept { return structured_; }

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const Point& vertex(std::size_t v) const { return vertices_[v]; }
    const Cell& cell(std::size_t k) const { return cells_[k]; }
    bool is_boundary(std::size_t v) const { return boundary_[v]; }
    const std::vector<bool>& boundary_flags() const noexcept { return boundary_; }

    /// Unknown index of an interior vertex, or -1 for boundary vertices.
    std::ptrdiff_t dof(std::size_t v) const { return dof_[v]; }
    /// Interior vertices in unknown order.
    const std::vector<std::size_t>& interior_vertices() const noexcept { return interior_; }

    /// Twice the signed area of cell k (positive for counter-clockwise cells).
    double signed_area2(std::size_t k) const;
    double area(std::size_t k) const { return 0.5 * signed_area2(k); }
    double diameter(std::size_t k) const { return diameters_[k]; }
    const std::vector<double>& cell_diameters() const noexcept { return diameters_; }
    double inradius(std::size_t k) const;
    std::array<Point, 3> corners(std::size_t k) const;

    /// Cells whose closure contains x, in increasing index order.
    std::vector<std::size_t> cells_containing(const Point& x, double tol = 1e-12) const;

    /// Throws GeometryError/InvariantError unless orientation, conformity,
    /// coverage and boundary flags are consistent.
    void check_invariants() const;

private:
    std::vector<Point> vertices_;
    std::vector<Cell> cells_;
    std::vector<bool> boundary_;
    int level_;
    bool structured_;
    std::vector<double> diameters_;
    std::vector<std::ptrdiff_t> dof_;
    std::vector<std::size_t> interior_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Uniform triangulation of the unit square: every grid square of side 2^-level is cut
/// along its lower-left to upper-right diagonal.
Mesh build_uniform_mesh(int level);

inline MeshPtr make_uniform_mesh(int level) {
    return std::make_shared<const Mesh>(build_uniform_mesh(level));
}

/// Uniform quadrisection (edge midpoints). For structured input the result is
/// identical to build_uniform_mesh(level + 1).
Mesh refine(const Mesh& mesh);

/// max over cells of diameter / inradius.
double shape_regularity_ratio(const Mesh& mesh);

/// Debug export: `v x y b` per vertex, then `c i j k` per cell.
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace bmofem
