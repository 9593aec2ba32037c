#pragma once

// Fixture builders shared by the test files.

#include <random>

#include "bmofem/fem.hpp"

namespace bmofem::testing {

/// P1 function with zero trace and uniform(-1, 1) interior values.
inline P1Function random_p1(const MeshPtr& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd interior(static_cast<Eigen::Index>(mesh->num_interior()));
    for (auto& v : interior) {
        v = dist(rng);
    }
    return P1Function::from_interior(mesh, interior);
}

/// Piecewise-constant field with uniform(-1, 1) components.
inline PCVectorField random_field(const MeshPtr& mesh, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    PCVectorField s = PCVectorField::zero(mesh);
    for (Vec2& v : s.values) {
        v = Vec2(dist(rng), dist(rng));
    }
    return s;
}

/// Evaluates a piecewise-constant field at points interior to cells.
inline VectorFieldFn as_function(const PCVectorField& field) {
    return [field](const Point& x) { return field.values[field.mesh->cells_containing(x).front()]; };
}

}  // namespace bmofem::testing
