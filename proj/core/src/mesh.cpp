#include "bmofem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "bmofem/errors.hpp"

namespace bmofem {

Mesh::Mesh(std::vector<Point> vertices, std::vector<Cell> cells, std::vector<bool> boundary,
           int level, bool structured)
    : vertices_(std::move(vertices)),
      cells_(std::move(cells)),
      boundary_(std::move(boundary)),
      level_(level),
      structured_(structured) {
    if (boundary_.size() != vertices_.size()) {
        throw InvariantError("boundary flag count does not match vertex count");
    }
    if (level_ < 0) {
        throw BoundsError("mesh level must be nonnegative");
    }
    diameters_.reserve(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        for (std::size_t v : cells_[k]) {
            if (v >= vertices_.size()) {
                throw InvariantError("cell " + std::to_string(k) + " references vertex " +
                                     std::to_string(v) + " out of range");
            }
        }
        const auto p = corners(k);
        diameters_.push_back(std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(),
                                       (p[0] - p[2]).norm()}));
    }
    dof_.assign(vertices_.size(), -1);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (!boundary_[v]) {
            dof_[v] = static_cast<std::ptrdiff_t>(interior_.size());
            interior_.push_back(v);
        }
    }
}

std::array<Point, 3> Mesh::corners(std::size_t k) const {
    const Cell& c = cells_[k];
    return {vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]};
}

double Mesh::signed_area2(std::size_t k) const {
    const auto p = corners(k);
    const Vec2 e1 = p[1] - p[0];
    const Vec2 e2 = p[2] - p[0];
    return e1.x() * e2.y() - e1.y() * e2.x();
}

double Mesh::inradius(std::size_t k) const {
    const auto p = corners(k);
    const double perimeter = (p[1] - p[0]).norm() + (p[2] - p[1]).norm() + (p[0] - p[2]).norm();
    return std::abs(signed_area2(k)) / perimeter;
}

namespace {

bool contains(const std::array<Point, 3>& p, const Point& x, double tol) {
    const double a2 = (p[1] - p[0]).x() * (p[2] - p[0]).y() - (p[1] - p[0]).y() * (p[2] - p[0]).x();
    if (a2 == 0.0) {
        return false;
    }
    auto lambda = [&](const Point& a, const Point& b) {
        return ((b - a).x() * (x - a).y() - (b - a).y() * (x - a).x()) / a2;
    };
    return lambda(p[1], p[2]) >= -tol && lambda(p[2], p[0]) >= -tol && lambda(p[0], p[1]) >= -tol;
}

}  // namespace

std::vector<std::size_t> Mesh::cells_containing(const Point& x, double tol) const {
    std::vector<std::size_t> found;
    if (structured_) {
        const long n = 1L << level_;
        const double hx = x.x() * static_cast<double>(n);
        const double hy = x.y() * static_cast<double>(n);
        const long i_lo = std::max(0L, static_cast<long>(std::floor(hx - 1e-9)));
        const long i_hi = std::min(n - 1, static_cast<long>(std::floor(hx + 1e-9)));
        const long j_lo = std::max(0L, static_cast<long>(std::floor(hy - 1e-9)));
        const long j_hi = std::min(n - 1, static_cast<long>(std::floor(hy + 1e-9)));
        for (long j = j_lo; j <= j_hi; ++j) {
            for (long i = i_lo; i <= i_hi; ++i) {
                const auto base = static_cast<std::size_t>(2 * (j * n + i));
                for (std::size_t k : {base, base + 1}) {
                    if (contains(corners(k), x, tol)) {
                        found.push_back(k);
                    }
                }
            }
        }
        std::sort(found.begin(), found.end());
        return found;
    }
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (contains(corners(k), x, tol)) {
            found.push_back(k);
        }
    }
    return found;
}

void Mesh::check_invariants() const {
    double total = 0.0;
    std::set<std::pair<std::size_t, std::size_t>> directed;
    std::map<std::pair<std::size_t, std::size_t>, int> multiplicity;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const double a2 = signed_area2(k);
        if (a2 < 0.0) {
            throw InvariantError("cell " + std::to_string(k) + " is negatively oriented");
        }
        if (!(a2 > 0.0)) {
            throw GeometryError(k, "degenerate (zero-area) cell");
        }
        total += 0.5 * a2;
        const Cell& c = cells_[k];
        for (int e = 0; e < 3; ++e) {
            const std::size_t a = c[e];
            const std::size_t b = c[(e + 1) % 3];
            // Two positively oriented neighbours traverse their shared edge in
            // opposite directions.
            if (!directed.emplace(a, b).second) {
                throw InvariantError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                     ") traversed twice in the same direction");
            }
            const auto key = std::minmax(a, b);
            if (++multiplicity[{key.first, key.second}] > 2) {
                throw InvariantError("edge shared by more than two cells");
            }
        }
    }
    for (const auto& [edge, count] : multiplicity) {
        if (count == 1 && (!boundary_[edge.first] || !boundary_[edge.second])) {
            throw InvariantError("boundary edge (" + std::to_string(edge.first) + ", " +
                                 std::to_string(edge.second) + ") has an interior endpoint");
        }
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvariantError("cell areas sum to " + std::to_string(total) + ", expected 1");
    }
}

Mesh build_uniform_mesh(int level) {
    if (level < 0 || level > kMaxMeshLevel) {
        throw BoundsError("mesh level " + std::to_string(level) + " outside [0, " +
                          std::to_string(kMaxMeshLevel) + "]");
    }
    const std::size_t n = std::size_t{1} << level;
    const double h = 1.0 / static_cast<double>(n);
    std::vector<Point> vertices;
    std::vector<bool> boundary;
    vertices.reserve((n + 1) * (n + 1));
    boundary.reserve((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
            vertices.emplace_back(static_cast<double>(i) * h, static_cast<double>(j) * h);
            boundary.push_back(i == 0 || j == 0 || i == n || j == n);
        }
    }
    std::vector<Cell> cells;
    cells.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v00 = j * (n + 1) + i;
            const std::size_t v10 = v00 + 1;
            const std::size_t v01 = v00 + (n + 1);
            const std::size_t v11 = v01 + 1;
            cells.push_back({v00, v10, v11});
            cells.push_back({v00, v11, v01});
        }
    }
    return Mesh(std::move(vertices), std::move(cells), std::move(boundary), level, true);
}

Mesh refine(const Mesh& mesh) {
    if (mesh.structured()) {
        return build_uniform_mesh(mesh.level() + 1);
    }
    if (mesh.level() + 1 > kMaxMeshLevel) {
        throw BoundsError("refinement would exceed mesh level " + std::to_string(kMaxMeshLevel));
    }
    std::vector<Point> vertices = mesh.vertices();
    std::vector<bool> boundary = mesh.boundary_flags();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
    std::map<std::pair<std::size_t, std::size_t>, int> multiplicity;
    for (const Cell& c : mesh.cells()) {
        for (int e = 0; e < 3; ++e) {
            const auto key = std::minmax(c[e], c[(e + 1) % 3]);
            ++multiplicity[{key.first, key.second}];
        }
    }
    auto mid = [&](std::size_t a, std::size_t b) {
        const auto key = std::minmax(a, b);
        const std::pair<std::size_t, std::size_t> edge{key.first, key.second};
        if (auto it = midpoint.find(edge); it != midpoint.end()) {
            return it->second;
        }
        vertices.push_back(0.5 * (mesh.vertex(a) + mesh.vertex(b)));
        boundary.push_back(multiplicity[edge] == 1);
        midpoint.emplace(edge, vertices.size() - 1);
        return vertices.size() - 1;
    };
    std::vector<Cell> cells;
    cells.reserve(4 * mesh.num_cells());
    for (const Cell& c : mesh.cells()) {
        const std::size_t m01 = mid(c[0], c[1]);
        const std::size_t m12 = mid(c[1], c[2]);
        const std::size_t m20 = mid(c[2], c[0]);
        cells.push_back({c[0], m01, m20});
        cells.push_back({m01, c[1], m12});
        cells.push_back({m20, m12, c[2]});
        cells.push_back({m01, m12, m20});
    }
    return Mesh(std::move(vertices), std::move(cells), std::move(boundary), mesh.level() + 1);
}

double shape_regularity_ratio(const Mesh& mesh) {
    double worst = 0.0;
    for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
        if (!(mesh.signed_area2(k) > 0.0)) {
            throw GeometryError(k, "degenerate or inverted cell");
        }
        worst = std::max(worst, mesh.diameter(k) / mesh.inradius(k));
    }
    return worst;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
    char buf[96];
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %d\n", mesh.vertex(v).x(), mesh.vertex(v).y(),
                      mesh.is_boundary(v) ? 1 : 0);
        out << buf;
    }
    for (const Cell& c : mesh.cells()) {
        out << "c " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    }
}

}  // namespace bmofem
