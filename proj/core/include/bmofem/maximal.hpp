#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bmofem/coeff.hpp"
#include "bmofem/mesh.hpp"

namespace bmofem {

// Maximal functions and BMO diagnostics over the finite family of dyadic
// subsquares of [0,1]^2. Suprema over all cubes are not computable; every
// dyadic quantity here is a lower bound for its all-cubes counterpart.

/// Dyadic square of side 2^-level with lower-left corner (ix, iy) * 2^-level.
struct DyadicSquare {
    int level = 0;
    long ix = 0;
    long iy = 0;

    double side() const;
    Point origin() const;
    bool contains(const Point& x) const;
};

/// Default relative tolerance of dyadic square averages.
inline constexpr double kDyadicRelTol = 1e-8;

/// max over cells K whose closure contains x of the mean of |w| on K.
double mesh_maximal(const ScalarField& w, const Mesh& mesh, const Point& x,
                    double rel_tol = kDyadicRelTol);

/// Closed dyadic squares of side 2^-j containing x, for a single level j.
std::vector<DyadicSquare> dyadic_squares_containing(const Point& x, int level);

/// Mean of |w| over a dyadic square.
double dyadic_abs_average(const ScalarField& w, const DyadicSquare& q, double rel_tol = kDyadicRelTol);

/// max over dyadic squares of side 2^-j (j = 0..depth) containing x of the
/// mean of |w|. depth <= 10.
double dyadic_maximal(const ScalarField& w, int depth, const Point& x,
                      double rel_tol = kDyadicRelTol);

/// Precomputed means of |w| over every dyadic square up to a depth; answers
/// dyadic_maximal queries for many points without re-integrating.
class DyadicAverageTable {
public:
    DyadicAverageTable(const ScalarField& w, int depth, double rel_tol = kDyadicRelTol);

    int depth() const noexcept { return depth_; }
    double average(const DyadicSquare& q) const;
    double maximal(const Point& x) const;

private:
    int depth_;
    std::vector<std::vector<double>> levels_;
};

/// Mean oscillation of w on q: mean of |w - w_q|.
double mean_oscillation(const ScalarField& w, const DyadicSquare& q, double rel_tol);

/// Default tolerance for the oscillation integrals of the BMO estimate.
inline constexpr double kBmoRelTol = 1e-6;

/// Running maximum of the mean oscillation over dyadic squares, one entry
/// per depth 0..depth. Nondecreasing by construction. depth <= 8.
std::vector<double> bmo_profile(const ScalarField& w, int depth, double rel_tol = kBmoRelTol);

/// max over dyadic squares of side 2^-j, j = 0..depth, of the mean
/// oscillation; a lower bound for the BMO seminorm.
double bmo_seminorm_estimate(const ScalarField& w, int depth, double rel_tol = kBmoRelTol);

struct DistributionPoint {
    double lambda = 0.0;
    double fraction = 0.0;
};

/// |{x in q : |w(x) - w_q| > lambda}| / |q| for each lambda, estimated on the
/// 2^depth x 2^depth midpoint grid of q (w_q is the sample mean). Non-finite
/// samples are skipped; more than 0.1% skipped is a SingularityError.
std::vector<DistributionPoint> john_nirenberg_check(const ScalarField& w, const DyadicSquare& q,
                                                    const std::vector<double>& lambdas, int depth);

}  // namespace bmofem
