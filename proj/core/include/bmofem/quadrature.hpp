#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include "bmofem/errors.hpp"
#include "bmofem/types.hpp"

namespace bmofem {

/// Subdivision cap for triangle averages: 4^8 sub-triangles.
inline constexpr int kMaxTriangleLevel = 8;
/// Minimum points per side of the tensor midpoint rule on a square.
inline constexpr int kMinSquarePoints = 16;

/// Throws BoundsError unless rel_tol lies in [1e-12, 1e-4].
void check_quadrature_tolerance(double rel_tol);

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.norm();
}

inline bool finite(double v) { return std::isfinite(v); }
template <class Derived>
bool finite(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}

template <class T>
T zero_like(const T& sample) {
    if constexpr (std::is_arithmetic_v<T>) {
        return T{0};
    } else {
        return T::Zero(sample.rows(), sample.cols());
    }
}

template <class F>
auto checked_eval(F& f, const Point& x) {
    auto v = f(x);
    if (!finite(v)) {
        throw SingularityError(x);
    }
    return v;
}

/// Composite centroid rule on the 4^m congruent sub-triangles of tri.
/// Returns (mean of f, mean of |f|).
template <class F>
auto centroid_rule(F& f, const std::array<Point, 3>& tri, int m) {
    const long n = 1L << m;
    const Vec2 e1 = (tri[1] - tri[0]) / static_cast<double>(n);
    const Vec2 e2 = (tri[2] - tri[0]) / static_cast<double>(n);
    using T = decltype(f(tri[0]));
    T sum = zero_like(checked_eval(f, tri[0] + (e1 + e2) / 3.0));
    double abs_sum = 0.0;
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i + j < n; ++i) {
            const Point up = tri[0] + (static_cast<double>(i) + 1.0 / 3.0) * e1 +
                             (static_cast<double>(j) + 1.0 / 3.0) * e2;
            const T v = checked_eval(f, up);
            sum += v;
            abs_sum += magnitude(v);
            if (i + j + 1 < n) {
                const Point down = tri[0] + (static_cast<double>(i) + 2.0 / 3.0) * e1 +
                                   (static_cast<double>(j) + 2.0 / 3.0) * e2;
                const T w = checked_eval(f, down);
                sum += w;
                abs_sum += magnitude(w);
            }
        }
    }
    const double count = static_cast<double>(n * n);
    return std::pair<T, double>{T(sum / count), abs_sum / count};
}

/// Tensor midpoint rule with n x n points on the square [x0, x0+side] x [y0, y0+side].
template <class F>
auto square_midpoint_rule(F& f, const Point& origin, double side, long n) {
    const double step = side / static_cast<double>(n);
    using T = decltype(f(origin));
    T sum = zero_like(checked_eval(f, origin + Point(0.5 * step, 0.5 * step)));
    double abs_sum = 0.0;
    for (long j = 0; j < n; ++j) {
        const double y = origin.y() + (static_cast<double>(j) + 0.5) * step;
        for (long i = 0; i < n; ++i) {
            const T v = checked_eval(f, Point(origin.x() + (static_cast<double>(i) + 0.5) * step, y));
            sum += v;
            abs_sum += magnitude(v);
        }
    }
    const double count = static_cast<double>(n) * static_cast<double>(n);
    return std::pair<T, double>{T(sum / count), abs_sum / count};
}

/// Drives a sequence of midpoint estimates with halving step. Accepts a level
/// as soon as two successive raw estimates agree, or two successive
/// Richardson-extrapolated estimates (4 Q_m - Q_{m-1}) / 3 agree, to rel_tol
/// relative to max(|value|, mean |f|).
template <class Rule>
auto adaptive_midpoint(Rule&& rule, int max_steps, double rel_tol, const char* what) {
    auto [q_prev, s_prev] = rule(0);
    using T = decltype(q_prev);
    T r_prev = q_prev;
    for (int m = 1; m <= max_steps; ++m) {
        auto [q, s] = rule(m);
        const double scale = std::max(magnitude(q), s);
        if (magnitude(T(q - q_prev)) <= rel_tol * scale) {
            return q;
        }
        const T r = T((4.0 * q - q_prev) / 3.0);
        if (m >= 2 && magnitude(T(r - r_prev)) <= rel_tol * scale) {
            return r;
        }
        q_prev = q;
        r_prev = r;
    }
    char tol[32];
    std::snprintf(tol, sizeof tol, "%g", rel_tol);
    throw QuadratureError(std::string(what) + ": no agreement to relative tolerance " + tol +
                          " within the subdivision cap");
}

}  // namespace detail

/// Mean value of f over the triangle tri by adaptive composite midpoint
/// quadrature (sub-triangle centroids only, so vertex singularities are never
/// evaluated).
template <class F>
auto triangle_average(F&& f, const std::array<Point, 3>& tri, double rel_tol) {
    return detail::adaptive_midpoint(
        [&](int m) { return detail::centroid_rule(f, tri, m); }, kMaxTriangleLevel, rel_tol,
        "triangle average");
}

/// Region cap of the globally adaptive averages.
inline constexpr std::size_t kMaxRefinedRegions = std::size_t{1} << 18;
inline constexpr int kMaxRefinedDepth = 30;
/// Every globally adaptive average starts from 4^kMinRefinedDepth regions.
inline constexpr int kMinRefinedDepth = 2;
/// Each region compares its rules at k = kRefinedRuleBase + 0, 1, 2.
inline constexpr int kRefinedRuleBase = 1;

namespace detail {

/// Globally adaptive driver. rule(shape, k) returns (mean, mean |f|) of a
/// midpoint rule whose point count grows by 4 with each k. Each region
/// carries the Richardson estimate of its rules at k = kRefinedRuleBase + 0,
/// 1, 2 with the difference of the last two as its error, or the finest raw
/// rule and its raw difference where the integrand is not yet in the
/// asymptotic regime. The region with the largest error is split into four
/// congruent children until the summed error drops below rel_tol times
/// max(|integral|, integral of |f|). Kinks that clip a region between its
/// sample points go unseen, so there the achieved accuracy can fall short of
/// rel_tol. Returns the mean over the root.
template <class Shape, class Rule, class Split>
auto refine_adaptive(const Shape& root_shape, Rule&& rule, Split&& split, double rel_tol,
                     const char* what) {
    using T = decltype(rule(root_shape, 0).first);
    struct Region {
        Shape shape;
        double weight;
        T estimate;
        double abs_estimate;
        double error;
        int depth;
    };
    auto analyse = [&](const Shape& shape, double weight, int depth) {
        const auto [q0, s0] = rule(shape, kRefinedRuleBase);
        const auto [q1, s1] = rule(shape, kRefinedRuleBase + 1);
        const auto [q2, s2] = rule(shape, kRefinedRuleBase + 2);
        (void)s0;
        (void)s1;
        const T r1 = T((4.0 * q1 - q0) / 3.0);
        const T r2 = T((4.0 * q2 - q1) / 3.0);
        // Extrapolation is trusted only where successive differences shrink
        // like a smooth integrand's (ratio near 4, up to 8 from the h^3 term
        // of the triangle rule); kinks and jumps fall back to the raw
        // difference.
        const double d1 = magnitude(T(q1 - q0));
        const double d2 = magnitude(T(q2 - q1));
        const bool asymptotic = (d1 == 0.0 && d2 == 0.0) || (d2 > 0.0 && d1 >= 2.0 * d2 && d1 <= 16.0 * d2);
        const double err = asymptotic ? magnitude(T(r2 - r1)) : std::max(d1, d2);
        return Region{shape, weight, T(weight * (asymptotic ? r2 : q2)), weight * s2, weight * err, depth};
    };
    auto by_error = [](const Region& a, const Region& b) { return a.error < b.error; };
    std::priority_queue<Region, std::vector<Region>, decltype(by_error)> heap(by_error);
    // Start from a uniform split so that one accidentally small estimate on
    // the root cannot stop the refinement.
    std::vector<Shape> initial{root_shape};
    double initial_weight = 1.0;
    for (int d = 0; d < kMinRefinedDepth; ++d) {
        std::vector<Shape> next;
        for (const Shape& shape : initial) {
            for (const Shape& child : split(shape)) {
                next.push_back(child);
            }
        }
        initial = std::move(next);
        initial_weight *= 0.25;
    }
    T total = zero_like(rule(root_shape, 0).first);
    double abs_total = 0.0;
    double error = 0.0;
    for (const Shape& shape : initial) {
        Region r = analyse(shape, initial_weight, kMinRefinedDepth);
        total += r.estimate;
        abs_total += r.abs_estimate;
        error += r.error;
        heap.push(std::move(r));
    }
    std::size_t regions = initial.size();
    while (error > rel_tol * std::max(magnitude(total), abs_total)) {
        if (regions + 3 > kMaxRefinedRegions || heap.top().depth >= kMaxRefinedDepth) {
            char tol[32];
            std::snprintf(tol, sizeof tol, "%g", rel_tol);
            throw QuadratureError(std::string(what) + ": no agreement to relative tolerance " + tol +
                                  " within the region cap");
        }
        const Region worst = heap.top();
        heap.pop();
        total -= worst.estimate;
        abs_total -= worst.abs_estimate;
        error -= worst.error;
        for (const Shape& child : split(worst.shape)) {
            Region r = analyse(child, 0.25 * worst.weight, worst.depth + 1);
            total += r.estimate;
            abs_total += r.abs_estimate;
            error += r.error;
            heap.push(std::move(r));
        }
        regions += 3;
        error = std::max(error, 0.0);
    }
    // Re-sum to shed the drift of the running updates.
    T sum = zero_like(total);
    while (!heap.empty()) {
        sum += heap.top().estimate;
        heap.pop();
    }
    return T(sum);
}

struct Square {
    Point origin;
    double side;
};

}  // namespace detail

/// Mean value of f over an axis-aligned square by globally adaptive tensor
/// midpoint quadrature. The finest rule on every region has kMinSquarePoints^2
/// points; regions are split into quadrants where the estimate is unsettled.
template <class F>
auto square_average(F&& f, const Point& origin, double side, double rel_tol) {
    auto rule = [&](const detail::Square& q, int k) {
        return detail::square_midpoint_rule(f, q.origin, q.side, long{kMinSquarePoints / 8} << k);
    };
    auto split = [](const detail::Square& q) {
        const double h = 0.5 * q.side;
        return std::array<detail::Square, 4>{detail::Square{q.origin, h},
                                             detail::Square{q.origin + Point(h, 0.0), h},
                                             detail::Square{q.origin + Point(0.0, h), h},
                                             detail::Square{q.origin + Point(h, h), h}};
    };
    return detail::refine_adaptive(detail::Square{origin, side}, rule, split, rel_tol,
                                   "square average");
}

/// Mean value of f over tri by globally adaptive quadrisection with centroid
/// rules. Unlike triangle_average, which refines uniformly, this resolves
/// point singularities of the integrand (e.g. powers of |log|) cheaply.
template <class F>
auto triangle_average_refined(F&& f, const std::array<Point, 3>& tri, double rel_tol) {
    using Tri = std::array<Point, 3>;
    auto rule = [&](const Tri& t, int k) { return detail::centroid_rule(f, t, k); };
    auto split = [](const Tri& t) {
        const Point m01 = 0.5 * (t[0] + t[1]);
        const Point m12 = 0.5 * (t[1] + t[2]);
        const Point m20 = 0.5 * (t[2] + t[0]);
        return std::array<Tri, 4>{Tri{t[0], m01, m20}, Tri{m01, t[1], m12}, Tri{m20, m12, t[2]},
                                  Tri{m01, m12, m20}};
    };
    return detail::refine_adaptive(tri, rule, split, rel_tol, "refined triangle average");
}

}  // namespace bmofem
