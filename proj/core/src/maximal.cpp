#include "bmofem/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "bmofem/errors.hpp"
#include "bmofem/quadrature.hpp"

namespace bmofem {

namespace {

void check_point(const Point& x) {
    if (!(x.x() >= 0.0 && x.x() <= 1.0 && x.y() >= 0.0 && x.y() <= 1.0)) {
        throw BoundsError("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                          ") outside the unit square");
    }
}

void check_depth(int depth, int limit) {
    if (depth < 0 || depth > limit) {
        throw BoundsError("dyadic depth " + std::to_string(depth) + " outside [0, " +
                          std::to_string(limit) + "]");
    }
}

std::vector<long> indices_containing(double t, long n) {
    const double scaled = t * static_cast<double>(n);
    long i = std::min(n - 1, static_cast<long>(std::floor(scaled)));
    std::vector<long> out{i};
    // A coordinate on a dyadic grid line lies in both adjacent closed squares.
    if (scaled == std::floor(scaled) && i > 0 && static_cast<double>(i) == scaled) {
        out.insert(out.begin(), i - 1);
    }
    return out;
}

}  // namespace

double DyadicSquare::side() const { return std::ldexp(1.0, -level); }

Point DyadicSquare::origin() const {
    return Point(static_cast<double>(ix) * side(), static_cast<double>(iy) * side());
}

bool DyadicSquare::contains(const Point& x) const {
    const Point o = origin();
    const double s = side();
    return x.x() >= o.x() && x.x() <= o.x() + s && x.y() >= o.y() && x.y() <= o.y() + s;
}

double mesh_maximal(const ScalarField& w, const Mesh& mesh, const Point& x, double rel_tol) {
    check_point(x);
    check_quadrature_tolerance(rel_tol);
    const auto cells = mesh.cells_containing(x);
    if (cells.empty()) {
        throw GeometryError(0, "no cell contains the query point");
    }
    auto abs_w = [&w](const Point& z) { return std::abs(w(z)); };
    double best = 0.0;
    for (std::size_t k : cells) {
        best = std::max(best, triangle_average_refined(abs_w, mesh.corners(k), rel_tol));
    }
    return best;
}

std::vector<DyadicSquare> dyadic_squares_containing(const Point& x, int level) {
    check_point(x);
    const long n = 1L << level;
    std::vector<DyadicSquare> out;
    for (long iy : indices_containing(x.y(), n)) {
        for (long ix : indices_containing(x.x(), n)) {
            out.push_back({level, ix, iy});
        }
    }
    return out;
}

double dyadic_abs_average(const ScalarField& w, const DyadicSquare& q, double rel_tol) {
    check_quadrature_tolerance(rel_tol);
    auto abs_w = [&w](const Point& z) { return std::abs(w(z)); };
    return square_average(abs_w, q.origin(), q.side(), rel_tol);
}

double dyadic_maximal(const ScalarField& w, int depth, const Point& x, double rel_tol) {
    check_depth(depth, 10);
    double best = 0.0;
    for (int j = 0; j <= depth; ++j) {
        for (const DyadicSquare& q : dyadic_squares_containing(x, j)) {
            best = std::max(best, dyadic_abs_average(w, q, rel_tol));
        }
    }
    return best;
}

DyadicAverageTable::DyadicAverageTable(const ScalarField& w, int depth, double rel_tol)
    : depth_(depth) {
    check_depth(depth, 10);
    levels_.resize(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) {
        const long n = 1L << j;
        auto& level = levels_[static_cast<std::size_t>(j)];
        level.reserve(static_cast<std::size_t>(n * n));
        for (long iy = 0; iy < n; ++iy) {
            for (long ix = 0; ix < n; ++ix) {
                level.push_back(dyadic_abs_average(w, {j, ix, iy}, rel_tol));
            }
        }
    }
}

double DyadicAverageTable::average(const DyadicSquare& q) const {
    if (q.level < 0 || q.level > depth_) {
        throw BoundsError("dyadic square level outside the table depth");
    }
    const long n = 1L << q.level;
    return levels_[static_cast<std::size_t>(q.level)][static_cast<std::size_t>(q.iy * n + q.ix)];
}

double DyadicAverageTable::maximal(const Point& x) const {
    double best = 0.0;
    for (int j = 0; j <= depth_; ++j) {
        for (const DyadicSquare& q : dyadic_squares_containing(x, j)) {
            best = std::max(best, average(q));
        }
    }
    return best;
}

double mean_oscillation(const ScalarField& w, const DyadicSquare& q, double rel_tol) {
    check_quadrature_tolerance(rel_tol);
    const double mean = square_average(w, q.origin(), q.side(), rel_tol);
    auto deviation = [&w, mean](const Point& z) { return std::abs(w(z) - mean); };
    return square_average(deviation, q.origin(), q.side(), rel_tol);
}

std::vector<double> bmo_profile(const ScalarField& w, int depth, double rel_tol) {
    check_depth(depth, 8);
    std::vector<double> profile;
    double best = 0.0;
    for (int j = 0; j <= depth; ++j) {
        const long n = 1L << j;
        for (long iy = 0; iy < n; ++iy) {
            for (long ix = 0; ix < n; ++ix) {
                best = std::max(best, mean_oscillation(w, {j, ix, iy}, rel_tol));
            }
        }
        profile.push_back(best);
    }
    return profile;
}

double bmo_seminorm_estimate(const ScalarField& w, int depth, double rel_tol) {
    return bmo_profile(w, depth, rel_tol).back();
}

std::vector<DistributionPoint> john_nirenberg_check(const ScalarField& w, const DyadicSquare& q,
                                                    const std::vector<double>& lambdas, int depth) {
    check_depth(depth, 12);
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) {
            throw BoundsError("distribution thresholds must be positive");
        }
    }
    const long n = 1L << depth;
    const double step = q.side() / static_cast<double>(n);
    const Point o = q.origin();
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n * n));
    std::size_t skipped = 0;
    std::optional<Point> first_bad;
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i) {
            const Point x(o.x() + (static_cast<double>(i) + 0.5) * step,
                          o.y() + (static_cast<double>(j) + 0.5) * step);
            const double v = w(x);
            if (!std::isfinite(v)) {
                ++skipped;
                if (!first_bad) {
                    first_bad = x;
                }
                continue;
            }
            samples.push_back(v);
        }
    }
    const double total = static_cast<double>(n) * static_cast<double>(n);
    if (static_cast<double>(skipped) > 1e-3 * total || samples.empty()) {
        throw SingularityError(*first_bad);
    }
    double mean = 0.0;
    for (double v : samples) {
        mean += v;
    }
    mean /= static_cast<double>(samples.size());
    std::vector<double> deviation;
    deviation.reserve(samples.size());
    for (double v : samples) {
        deviation.push_back(std::abs(v - mean));
    }
    std::sort(deviation.begin(), deviation.end());
    std::vector<DistributionPoint> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const auto above = deviation.end() - std::upper_bound(deviation.begin(), deviation.end(), lambda);
        out.push_back({lambda, static_cast<double>(above) / static_cast<double>(samples.size())});
    }
    return out;
}

}  // namespace bmofem
