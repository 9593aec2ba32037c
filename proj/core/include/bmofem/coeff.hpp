#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bmofem/mesh.hpp"
#include "bmofem/types.hpp"

namespace bmofem {

enum class CoefficientKind { constant, smooth, log_singular, checkerboard, sampled_grid };

std::string to_string(CoefficientKind kind);

/// Matrix-valued coefficient A(x) with declared coercivity constant alpha.
///
/// No upper eigenvalue bound is assumed anywhere; log_singular fields are
/// unbounded at their singular point. evaluate must be a pure function.
struct CoefficientField {
    std::function<Mat2(const Point&)> evaluate;
    double alpha = 1.0;
    CoefficientKind kind = CoefficientKind::constant;
    std::map<std::string, double> params;

    Mat2 operator()(const Point& x) const { return evaluate(x); }
};

using ScalarField = std::function<double(const Point&)>;

/// Smaller eigenvalue of the symmetric part of m.
double min_eigenvalue(const Mat2& m);

CoefficientField constant_coefficient(const Mat2& value);
inline CoefficientField identity_coefficient() { return constant_coefficient(Mat2::Identity()); }
/// diag(2 + sin(pi x), 2 + cos(pi y)), alpha = 1.
CoefficientField smooth_coefficient();
/// (1 + beta |log |x - x0||) I, alpha = 1.
CoefficientField log_singular_coefficient(double beta, const Point& x0 = Point(0.0, 0.0));
/// I on [0,1/2]^2 and [1/2,1]^2, kappa I on the two other quadrants.
CoefficientField checkerboard_coefficient(double kappa);

/// Bilinear interpolation of samples on a tensor grid.
///
/// CSV format: header `x,y,a11,a12,a22`, one row per grid node, and a comment
/// line `# alpha=<value>`. Rows may come in any order but must cover the full
/// tensor product of the distinct x and y values.
CoefficientField read_sampled_coefficient(std::istream& in);
CoefficientField load_sampled_coefficient(const std::string& path);

/// Cell-wise constant symmetric matrices aligned with a mesh.
struct PiecewiseConstantMatrixField {
    MeshPtr mesh;
    std::vector<Mat2> values;
};

/// Cell averages of A by uniformly refined centroid quadrature, falling back
/// to globally adaptive refinement on cells where that cannot converge.
PiecewiseConstantMatrixField project_coefficient(const CoefficientField& coeff, const MeshPtr& mesh,
                                                 double rel_tol);

/// Smallest eigenvalue over all cells. Throws InvariantError on a
/// non-symmetric cell value.
double coercivity_of_projection(const PiecewiseConstantMatrixField& field);

/// ||A - A_h||_{L^r} with the Frobenius norm pointwise, r in [1.1, 10].
double coefficient_error(const CoefficientField& coeff, const PiecewiseConstantMatrixField& field,
                         double r, double rel_tol);

}  // namespace bmofem
